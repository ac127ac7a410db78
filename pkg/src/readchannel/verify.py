"""Desk-scale property sweeps behind ``readchannel verify``.

Each check returns a :class:`CheckResult`; suites are lists of checks keyed by
name. ``max_ell`` and ``max_n`` cap the parameter sweeps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable

import numpy as np

from .channel import read_vector
from .core import ChannelParams
from .enumerate import count_constraint_words, count_read_vectors
from .spectral import (
    CapacityBounds,
    build_constraint_graph,
    capacity_closed_form,
    char_poly,
    constraint_capacity,
    interval_graph_root,
    perron_eigenvalue,
)
from .stategraph import (
    IntervalNode,
    adjacency_closed_form,
    adjacency_from_graph,
    build_G,
    build_H,
    label_language,
    node_count,
    path_language_count,
    prune_H,
)
from .transforms import BlockIndexGrid, build_code_C, check_L_constraint, g_map, phi, pi_words
from .twodim import Params2D, finite_equalities_check


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _interval_params(max_ell: int):
    for ell in range(2, max_ell + 1):
        for delta in range(1, ell):
            if delta < ell < 2 * delta:
                yield ChannelParams(ell, delta)


def check_closed_form_adjacency(max_ell: int, max_n: int) -> tuple[bool, str]:
    bad = [p for p in _interval_params(max_ell)
           if not np.array_equal(adjacency_closed_form(p), adjacency_from_graph(prune_H(build_H(p))))]
    return not bad, f"mismatches: {bad}" if bad else f"{len(list(_interval_params(max_ell)))} pairs"


def check_node_count(max_ell: int, max_n: int) -> tuple[bool, str]:
    bad = [p for p in _interval_params(max_ell) if len(prune_H(build_H(p)).nodes) != node_count(p)]
    return not bad, f"mismatches: {bad}" if bad else ""


def check_determinism(max_ell: int, max_n: int) -> tuple[bool, str]:
    bad = [p for p in _interval_params(max_ell) if not build_H(p).is_deterministic()]
    return not bad, f"non-deterministic: {bad}" if bad else ""


def check_row_sums(max_ell: int, max_n: int) -> tuple[bool, str]:
    for p in _interval_params(max_ell):
        H = prune_H(build_H(p))
        for v, row in zip(sorted(H.nodes, key=lambda v: (-v.size, v.a)), adjacency_from_graph(H)):
            if row.sum() != p.delta + 1 + v.size:
                return False, f"{p} row {v}"
    return True, ""


def check_label_regularity(max_ell: int, max_n: int) -> tuple[bool, str]:
    for ell in range(2, min(max_ell, 10) + 1):
        for delta in range(1, ell + 1):
            if not delta < ell <= 2 * delta:
                continue
            G = build_G(ChannelParams(ell, delta))
            for s, t in product(G.nodes, repeat=2):
                if len(G.labels_between(s, t)) != 2 * delta - ell + 1:
                    return False, f"({ell},{delta}) pair {s}->{t}"
    return True, ""


def check_language_equality(max_ell: int, max_n: int) -> tuple[bool, str]:
    for ell, delta in [(3, 2), (5, 3), (5, 4), (7, 4)]:
        p = ChannelParams(ell, delta)
        G, H = build_G(p), build_H(p)
        for k in range(1, 7):
            if label_language(G, G.nodes, k) != label_language(H, [IntervalNode(0, ell - delta)], k):
                return False, f"{p} k={k}"
    return True, ""


def check_oracle_paths(max_ell: int, max_n: int) -> tuple[bool, str]:
    for ell, delta in [(3, 2), (5, 3), (5, 4), (7, 4)]:
        p = ChannelParams(ell, delta)
        H = build_H(p)
        for n in p.valid_lengths(max_n):
            c = count_read_vectors(n, p).count
            k = path_language_count(H, IntervalNode(0, ell - delta), p.t(n) + 1)
            if c != k:
                return False, f"{p} n={n}: {c} != {k}"
    return True, ""


def check_char_poly(max_ell: int, max_n: int) -> tuple[bool, str]:
    for p in _interval_params(max_ell):
        m = node_count(p)
        s = p.ell - p.delta
        expected = [0] * (m + 1)
        expected[m - 2:] = [s * (s + 1), -(p.ell + 1), 1]
        if list(char_poly(adjacency_closed_form(p)).coeffs) != expected:
            return False, f"{p}"
    return True, ""


def check_perron_quadratic(max_ell: int, max_n: int) -> tuple[bool, str]:
    for p in _interval_params(max_ell):
        lam = perron_eigenvalue(adjacency_closed_form(p))
        if abs(lam - interval_graph_root(p)) >= 1e-9:
            return False, f"{p}: {lam}"
    return True, ""


def check_constraint_graph(max_ell: int, max_n: int) -> tuple[bool, str]:
    for delta in range(2, 9):
        for b in range(1, delta):
            _, A = build_constraint_graph(b, delta)
            value = math.log2(perron_eigenvalue(A)) / delta
            if abs(value - constraint_capacity(b, delta).value) >= 1e-9:
                return False, f"b={b} delta={delta}"
    return True, ""


def check_bound_order(max_ell: int, max_n: int) -> tuple[bool, str]:
    for delta in range(2, 7):
        for ell in range(2 * delta + 1, 21):
            cap = capacity_closed_form(ChannelParams(ell, delta))
            if isinstance(cap, CapacityBounds) and cap.lower.value > cap.upper.value:
                return False, f"({ell},{delta})"
    return True, ""


def check_binary_reduction(max_ell: int, max_n: int) -> tuple[bool, str]:
    for ell, delta in [(2, 2), (3, 2)]:
        p = ChannelParams(ell, delta)
        for n in p.valid_lengths(min(max_n, 8)):
            a3 = count_read_vectors(n, p, 3).count
            a2 = count_read_vectors(2 * n, p.scaled(2)).count
            if a3 != a2:
                return False, f"{p} n={n}: {a3} != {a2}"
    return True, ""


def check_phi(max_ell: int, max_n: int) -> tuple[bool, str]:
    p = ChannelParams(8, 3)
    for n in (11, 14, 17):
        if n > max_n:
            continue
        grid = BlockIndexGrid.for_channel(p, n)
        for v in pi_words(grid):
            if read_vector(phi(v, grid), p) != read_vector(v, p):
                return False, f"n={n} v={v}"
    return True, ""


def check_g(max_ell: int, max_n: int) -> tuple[bool, str]:
    p = ChannelParams(8, 3)
    N = 14
    grid = BlockIndexGrid.for_channel(p, N)
    code = build_code_C(N, p)
    images = {g_map(v, grid) for v in code}
    if len(images) != len(code):
        return False, "g not injective"
    short = BlockIndexGrid(p.delta, p.b, N - p.a * p.delta)
    if not all(check_L_constraint(w[:short.n], short) for w in images):
        return False, "constraint violated"
    return True, f"|C|={len(code)}"


def check_counting_chain(max_ell: int, max_n: int) -> tuple[bool, str]:
    p = ChannelParams(8, 3)
    for n in (8, 11):
        A = count_read_vectors(n + p.a * p.delta, p).count
        C = len(build_code_C(n + p.a * p.delta, p))
        L = 2 ** (p.a * p.delta) * count_constraint_words(n, p.b, p.delta).count
        if not A <= C <= L:
            return False, f"n={n}: {A}, {C}, {L}"
    return True, ""


def check_two_dim(max_ell: int, max_n: int) -> tuple[bool, str]:
    cases = [
        (Params2D.of((2, 2), (1, 2)), 3, 4, {}),
        (Params2D.of((1, 1), (1, 1)), 2, 2, {}),
        (Params2D.of((1, 1), (1, 1), q=3), 2, 2, {"q1": 2, "q2": 1}),
        (Params2D.of((2, 1), (1, 2)), 3, 3, {}),
    ]
    for params, n1, n2, kw in cases:
        for c in finite_equalities_check(params, n1, n2, **kw):
            if not c.passed:
                return False, f"{params} {c.name}: {c.lhs} vs {c.rhs}"
    return True, ""


Check = Callable[[int, int], tuple[bool, str]]

SUITES: dict[str, list[tuple[str, Check]]] = {
    "graphs": [
        ("closed-form adjacency", check_closed_form_adjacency),
        ("pruned node count", check_node_count),
        ("interval graph determinism", check_determinism),
        ("row sums", check_row_sums),
        ("label regularity", check_label_regularity),
        ("language equality", check_language_equality),
        ("oracle path counts", check_oracle_paths),
    ],
    "spectral": [
        ("characteristic polynomial", check_char_poly),
        ("perron vs quadratic", check_perron_quadratic),
        ("constraint graph eigenvalue", check_constraint_graph),
        ("bound ordering", check_bound_order),
        ("binary reduction counts", check_binary_reduction),
    ],
    "transforms": [
        ("phi preserves read vectors", check_phi),
        ("g injective into constraint", check_g),
        ("counting chain", check_counting_chain),
    ],
    "twodim": [
        ("2-D count identities", check_two_dim),
    ],
}


def run_suite(suite: str, *, max_ell: int = 12, max_n: int = 18) -> list[CheckResult]:
    names = list(SUITES) if suite == "all" else [suite]
    out = []
    for s in names:
        for name, fn in SUITES[s]:
            ok, detail = fn(max_ell, max_n)
            out.append(CheckResult(s, name, ok, detail))
    return out
