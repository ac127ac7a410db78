"""Capacity table for one step size, with subset-automaton values next to the closed forms.

    python3 scripts/capacity_table.py --delta 2 --ell-max 9 > table.csv
"""
import argparse
import sys
import time
from dataclasses import dataclass

from readchannel.spectral import capacity_table, table_to_csv


@dataclass
class Config:
    delta: int = 2
    ell_min: int = 2
    ell_max: int = 9
    budget: int = 1 << 16


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    cfg = Config(**vars(ap.parse_args()))
    t0 = time.perf_counter()
    rows = capacity_table(cfg.delta, range(max(cfg.ell_min, cfg.delta), cfg.ell_max + 1),
                          with_automaton=True, budget=cfg.budget)
    sys.stdout.write(table_to_csv(rows))
    print(f"# {len(rows)} rows in {time.perf_counter() - t0:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
