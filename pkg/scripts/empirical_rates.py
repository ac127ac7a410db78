"""Exhaustive rates log2(A(n))/n and growth ratios next to the closed-form capacity.

    python3 scripts/empirical_rates.py --ell 3 --delta 2 --n-max 21
"""
import argparse
import csv
import sys
from dataclasses import dataclass

from readchannel.core import ChannelParams
from readchannel.enumerate import growth_ratio, rate_sequence
from readchannel.spectral import CapacityBounds, capacity_closed_form


@dataclass
class Config:
    ell: int = 3
    delta: int = 2
    q: int = 2
    n_max: int = 21
    threads: int = 1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    cfg = Config(**vars(ap.parse_args()))
    p = ChannelParams(cfg.ell, cfg.delta)
    results = rate_sequence(p, cfg.q, p.valid_lengths(cfg.n_max), threads=cfg.threads)
    ratios = [None] + growth_ratio(results, p.delta)
    cap = capacity_closed_form(p)
    ref = f"[{cap.lower.value:.6f}, {cap.upper.value:.6f}]" if isinstance(cap, CapacityBounds) else f"{cap.value:.6f}"
    print(f"# capacity {ref}", file=sys.stderr)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "count", "rate", "growth_ratio"])
    for r, g in zip(results, ratios):
        w.writerow([r.n, r.count, f"{r.rate:.6f}", "" if g is None else f"{g:.6f}"])


if __name__ == "__main__":
    main()
