"""Exhaustive counting chain A(N) <= |C(N)| <= 2^(a*delta) * A(N - a*delta, L) for ell > 2*delta.

    python3 scripts/upper_bound_chain.py --ell 8 --delta 3 --n-max 11
"""
import argparse
from dataclasses import dataclass

from readchannel.core import ChannelParams
from readchannel.enumerate import count_constraint_words, count_read_vectors
from readchannel.spectral import constraint_capacity
from readchannel.transforms import BlockIndexGrid, build_code_C, g_map


@dataclass
class Config:
    ell: int = 8
    delta: int = 3
    n_max: int = 11


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    cfg = Config(**vars(ap.parse_args()))
    p = ChannelParams(cfg.ell, cfg.delta)
    shift = p.a * p.delta
    print(f"# constraint capacity {constraint_capacity(p.b, p.delta).value:.6f}")
    print("n,A(n+a*delta),|C|,2^(a*delta)*A(n;L),g_injective")
    for n in range(p.b + p.delta, cfg.n_max + 1, p.delta):
        N = n + shift
        if N < p.ell:
            continue
        code = build_code_C(N, p)
        grid = BlockIndexGrid.for_channel(p, N)
        injective = len({g_map(v, grid) for v in code}) == len(code)
        A = count_read_vectors(N, p).count
        L = 2**shift * count_constraint_words(n, p.b, p.delta).count
        print(f"{n},{A},{len(code)},{L},{injective}")


if __name__ == "__main__":
    main()
