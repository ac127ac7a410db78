"""Command-line entry point: ``readchannel <subcommand> ...``.

Exit codes: 0 success, 1 bad parameters, 2 budget exceeded, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .core import BudgetError, ChannelParams, NumericError, ParameterError
from .enumerate import DEFAULT_BUDGET, count_read_matrices, count_read_vectors
from .spectral import (
    CapacityBounds,
    CapacityValue,
    build_constraint_graph,
    capacity_closed_form,
    capacity_table,
    qary_capacity,
    table_to_csv,
    table_to_json,
)
from .stategraph import build_G, build_H, export_dot, prune_H, to_json
from .twodim import Params2D, capacity_2d
from .verify import run_suite

EXIT_OK, EXIT_PARAM, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARAM)


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    fmt: str
    budget: int
    threads: int


def _f(x: float) -> str:
    return f"{x:.6f}"


def _capacity_payload(cap) -> dict:
    if isinstance(cap, CapacityBounds):
        return {"kind": "bounds", "lower": _value_payload(cap.lower), "upper": _value_payload(cap.upper)}
    return _value_payload(cap)


def _value_payload(c: CapacityValue) -> dict:
    d = {"kind": c.kind, "bits": round(c.value, 6), "provenance": c.provenance, "q": c.q}
    if c.q > 2:
        d["qary_units"] = round(c.qary_units, 6)
    return d


def _capacity_text(cap) -> str:
    if isinstance(cap, CapacityBounds):
        line = f"[{_f(cap.lower.value)}, {_f(cap.upper.value)}]"
        if cap.q > 2:
            line += f" bits/symbol; [{_f(cap.lower.qary_units)}, {_f(cap.upper.qary_units)}] q-ary units"
        return f"{line} (bounds: {cap.lower.provenance} / {cap.upper.provenance})"
    line = _f(cap.value)
    if cap.q > 2:
        line += f" bits/symbol; {_f(cap.qary_units)} q-ary units"
    return f"{line} ({cap.kind}, {cap.provenance})"


def _emit_capacity(cap, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_capacity_payload(cap)))
    elif fmt == "csv":
        if isinstance(cap, CapacityBounds):
            print("kind,lower,upper")
            print(f"bounds,{_f(cap.lower.value)},{_f(cap.upper.value)}")
        else:
            print("kind,value")
            print(f"{cap.kind},{_f(cap.value)}")
    else:
        print(_capacity_text(cap))


def cmd_capacity(args, cfg: CliConfig) -> int:
    _emit_capacity(qary_capacity(ChannelParams(args.ell, args.delta), args.q), cfg.fmt)
    return EXIT_OK


def cmd_bound(args, cfg: CliConfig) -> int:
    cap = capacity_closed_form(ChannelParams(args.ell, args.delta))
    if not isinstance(cap, CapacityBounds):
        raise ParameterError(
            f"({args.ell},{args.delta}) has an exact capacity {_f(cap.value)}; bounds apply to ell > 2*delta with delta not dividing ell"
        )
    if cfg.fmt == "text":
        print(f"lower {_f(cap.lower.value)}")
        print(f"upper {_f(cap.upper.value)}")
    else:
        _emit_capacity(cap, cfg.fmt)
    return EXIT_OK


def cmd_capacity2d(args, cfg: CliConfig) -> int:
    params = Params2D.of((args.ell1, args.ell2), (args.delta1, args.delta2), args.q)
    _emit_capacity(capacity_2d(params), cfg.fmt)
    return EXIT_OK


def _emit_count(res, fmt: str) -> None:
    row = res.as_row()
    if fmt == "json":
        print(json.dumps({**row, "count": str(row["count"])}))
    elif fmt == "csv":
        print("n,count,rate")
        print(f"{row['n']},{row['count']},{_f(row['rate'])}")
    else:
        print(f"n={row['n']} count={row['count']} rate={_f(row['rate'])}")


def cmd_enumerate(args, cfg: CliConfig) -> int:
    p = ChannelParams(args.ell, args.delta)
    res = count_read_vectors(args.n, p, args.q, budget=cfg.budget, threads=cfg.threads)
    _emit_count(res, cfg.fmt)
    return EXIT_OK


def cmd_enumerate2d(args, cfg: CliConfig) -> int:
    res = count_read_matrices(
        args.n1, args.n2, ChannelParams(args.ell1, args.delta1), ChannelParams(args.ell2, args.delta2),
        args.q, budget=cfg.budget, threads=cfg.threads,
    )
    _emit_count(res, cfg.fmt)
    return EXIT_OK


def cmd_table(args, cfg: CliConfig) -> int:
    if args.ell_min > args.ell_max:
        raise ParameterError("--ell-min must not exceed --ell-max")
    rows = capacity_table(args.delta, range(args.ell_min, args.ell_max + 1), with_automaton=args.automaton)
    if cfg.fmt == "csv":
        sys.stdout.write(table_to_csv(rows))
    elif cfg.fmt == "json":
        print(table_to_json(rows))
    else:
        for r in rows:
            shown = _f(r.value) if r.value is not None else f"[{_f(r.lower)}, {_f(r.upper)}]"
            extra = f" automaton={_f(r.automaton)}" if r.automaton is not None else ""
            print(f"ell={r.ell} delta={r.delta} {r.regime:<15} {shown}{extra}")
    return EXIT_OK


def cmd_graph(args, cfg: CliConfig) -> int:
    if args.stage == "constraint":
        if args.b is None:
            raise ParameterError("--stage constraint needs --b (or --ell, whose residue mod delta is used)")
        graph, _ = build_constraint_graph(args.b, args.delta)
    else:
        p = ChannelParams(args.ell, args.delta)
        graph = {"G": build_G, "H": build_H, "Hstar": lambda p: prune_H(build_H(p))}[args.stage](p)
    sys.stdout.write(export_dot(graph, args.stage) if args.emit == "dot" else to_json(graph) + "\n")
    return EXIT_OK


def cmd_verify(args, cfg: CliConfig) -> int:
    results = run_suite(args.suite, max_ell=args.max_ell, max_n=args.max_n)
    passed = sum(r.passed for r in results)
    if cfg.fmt == "json":
        print(json.dumps({"passed": passed, "total": len(results),
                          "checks": [r.__dict__ for r in results]}))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.suite}: {r.name}" + (f" ({r.detail})" if r.detail else ""))
        print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if passed == len(results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum inputs to enumerate")
    common.add_argument("--threads", type=int, default=1)

    parser = _Parser(prog="readchannel", description="Read channel capacities, counts and graphs.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("capacity", cmd_capacity, "closed-form capacity or bound pair")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--q", type=int, default=2)

    sp = add("bound", cmd_bound, "lower and upper bounds where no exact value is known")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)

    sp = add("capacity2d", cmd_capacity2d, "2-D capacity or bound pair")
    for flag in ("--ell1", "--ell2", "--delta1", "--delta2"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--q", type=int, default=2)

    sp = add("enumerate", cmd_enumerate, "exhaustive count of distinct read vectors")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--q", type=int, default=2)

    sp = add("enumerate2d", cmd_enumerate2d, "exhaustive count of distinct read matrices")
    for flag in ("--n1", "--n2", "--ell1", "--ell2", "--delta1", "--delta2"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--q", type=int, default=2)

    sp = add("table", cmd_table, "capacity table for one delta")
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--ell-min", type=int, required=True)
    sp.add_argument("--ell-max", type=int, required=True)
    sp.add_argument("--automaton", action="store_true", help="add subset-automaton values")

    sp = add("graph", cmd_graph, "export a state graph")
    sp.add_argument("--ell", type=int)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--b", type=int, help="block residue for --stage constraint")
    sp.add_argument("--stage", choices=("G", "H", "Hstar", "constraint"), default="G")
    sp.add_argument("--emit", choices=("dot", "json"), default="dot")

    sp = add("verify", cmd_verify, "run property sweeps")
    sp.add_argument("--suite", choices=("all", "graphs", "transforms", "twodim", "spectral"), default="all")
    sp.add_argument("--max-ell", type=int, default=12)
    sp.add_argument("--max-n", type=int, default=18)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "stage", None) == "constraint" and args.b is None and args.ell is not None:
        args.b = args.ell % args.delta
    if getattr(args, "stage", "constraint") != "constraint" and args.ell is None:
        print("readchannel: error: --ell is required for this stage", file=sys.stderr)
        return EXIT_PARAM
    cfg = CliConfig(args.subcommand, args.fmt, args.budget, args.threads)
    try:
        return args.func(args, cfg)
    except ParameterError as exc:
        print(f"readchannel: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except BudgetError as exc:
        print(f"readchannel: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NumericError as exc:
        print(f"readchannel: numeric error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
