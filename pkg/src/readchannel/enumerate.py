"""Exhaustive counting oracles.

Every count here comes from enumerating all inputs and collecting the distinct
channel outputs, so it is exact. The number of distinct outputs equals the
largest read code size, since a maximum code keeps one preimage per output.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Sequence

import numpy as np

from .channel import matrix_window_sums, window_sums
from .core import BudgetError, ChannelParams, ParameterError
from .transforms import BlockIndexGrid, check_L_constraint, pi_words

DEFAULT_BUDGET = 1 << 24
SHARD_PREFIX = 8
_MAX_SHARD_ROWS = 1 << 18


@dataclass(frozen=True)
class CountResult:
    n: int | tuple[int, int]
    count: int
    rate: float

    @classmethod
    def make(cls, n, count: int) -> "CountResult":
        cells = n if isinstance(n, int) else n[0] * n[1]
        return cls(n, count, math.log2(count) / cells if count and cells else 0.0)

    def as_row(self) -> dict:
        n = self.n if isinstance(self.n, int) else f"{self.n[0]}x{self.n[1]}"
        return {"n": n, "count": self.count, "rate": self.rate}


def _digits(start: int, stop: int, n: int, q: int) -> np.ndarray:
    """Rows are the base-q expansions of ``start .. stop-1``, first symbol most significant."""
    codes = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, n), dtype=np.int8)
    for k in range(n - 1, -1, -1):
        out[:, k] = codes % q
        codes //= q
    return out


def _shards(total: int, n: int, q: int) -> list[tuple[int, int]]:
    """Contiguous index ranges; fixing the leading symbols makes each a prefix shard."""
    prefix = min(SHARD_PREFIX, n)
    size = q ** (n - prefix)
    while size > _MAX_SHARD_ROWS:
        size //= q
    return [(s, min(s + size, total)) for s in range(0, total, size)]


def _pack(outputs: np.ndarray, base: int) -> np.ndarray | None:
    """Injective int64 key per output row, or None if the key space overflows."""
    width = outputs.shape[1]
    if width * math.log2(base) >= 62:
        return None
    keys = np.zeros(outputs.shape[0], dtype=np.int64)
    for col in range(width):
        keys = keys * base + outputs[:, col]
    return keys


def _distinct(outputs: np.ndarray, base: int, method: str):
    if method == "hash":
        rows = np.ascontiguousarray(outputs, dtype=np.int32)
        return {r.tobytes() for r in rows}
    keys = _pack(outputs, base)
    if keys is not None:
        return np.unique(keys)
    return np.unique(outputs, axis=0)


def _merge(parts: list, method: str):
    if method == "hash":
        merged: set = set()
        for part in parts:
            merged |= part
        return merged
    if parts[0].ndim == 1:
        return np.unique(np.concatenate(parts))
    return np.unique(np.concatenate(parts), axis=0)


def _count_outputs(
    n_symbols: int,
    q: int,
    reader: Callable[[np.ndarray], np.ndarray],
    base: int,
    budget: int,
    method: str,
    threads: int,
) -> int:
    if method not in ("sort", "hash"):
        raise ParameterError(f"unknown distinctness method {method!r}")
    total = q ** n_symbols
    if total > budget:
        raise BudgetError(f"{q}^{n_symbols} = {total} inputs exceeds the enumeration budget {budget}")

    def work(rng):
        return _distinct(reader(_digits(rng[0], rng[1], n_symbols, q)), base, method)

    shards = _shards(total, n_symbols, q)
    if threads > 1 and len(shards) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, shards))
    else:
        parts = [work(s) for s in shards]
    return len(_merge(parts, method))


def count_read_vectors(
    n: int,
    p: ChannelParams,
    q: int = 2,
    *,
    budget: int = DEFAULT_BUDGET,
    method: str = "sort",
    threads: int = 1,
) -> CountResult:
    """Number of distinct read vectors over all of ``Sigma_q^n``.

    ``method="sort"`` deduplicates via sorted integer keys (exact);
    ``method="hash"`` uses a Python set of serialized rows.
    """
    if q < 2:
        raise ParameterError(f"alphabet size must be >= 2, got {q}")
    p.t(n)
    count = _count_outputs(
        n, q, lambda w: window_sums(w, p), p.ell * (q - 1) + 1, budget, method, threads
    )
    return CountResult.make(n, count)


def rate_sequence(p: ChannelParams, q: int, n_list: Iterable[int], **kwargs) -> list[CountResult]:
    return [count_read_vectors(n, p, q, **kwargs) for n in n_list]


def count_read_matrices(
    n1: int,
    n2: int,
    p1: ChannelParams,
    p2: ChannelParams,
    q: int = 2,
    *,
    budget: int = DEFAULT_BUDGET,
    method: str = "sort",
    threads: int = 1,
) -> CountResult:
    """Number of distinct read matrices over all ``n1 x n2`` matrices (flattened row-major)."""
    if q < 2:
        raise ParameterError(f"alphabet size must be >= 2, got {q}")
    p1.t(n1)
    p2.t(n2)

    def reader(flat):
        R = matrix_window_sums(flat.reshape(-1, n1, n2), p1, p2)
        return R.reshape(R.shape[0], -1)

    count = _count_outputs(
        n1 * n2, q, reader, p1.ell * p2.ell * (q - 1) + 1, budget, method, threads
    )
    return CountResult.make((n1, n2), count)


def max_read_code(n: int, p: ChannelParams, q: int = 2, *, budget: int = 1 << 20) -> list[tuple[int, ...]]:
    """A maximum read code: the lexicographically first preimage of every read vector."""
    p.t(n)
    if q ** n > budget:
        raise BudgetError(f"{q}^{n} inputs exceeds the budget {budget}")
    words = _digits(0, q ** n, n, q)
    outputs = window_sums(words, p)
    _, first = np.unique(outputs, axis=0, return_index=True)
    return [tuple(int(s) for s in words[i]) for i in sorted(first)]


def count_constraint_words(n: int, b: int, delta: int) -> CountResult:
    """Number of block-canonical words of length ``n`` avoiding ``1^d 0^b 1^d 0^b``.

    Two layouts are accepted. ``n = k * delta`` means ``k`` blocks, each a
    d-block followed by a b-block, with the pattern tested at every block
    start. ``n = b + k * delta`` means the same blocks preceded by one free
    b-block, which is the layout of a word in the Pi set of an (ell, delta)
    channel with ``ell mod delta = b``.
    """
    if not 0 < b < delta:
        raise ParameterError(f"need 0 < b < delta, got b={b}, delta={delta}")
    if n <= 0:
        raise ParameterError(f"need a positive length, got {n}")
    if n % delta == 0:
        k, lead = n // delta, False
    elif n % delta == b:
        k, lead = (n - b) // delta, True
    else:
        raise ParameterError(f"length {n} is neither a multiple of {delta} nor {b} mod {delta}")
    grid = BlockIndexGrid(delta=delta, b=b, n=b + k * delta)
    count = 0
    for v in pi_words(grid, fixed_lead=None if lead else 0):
        if check_L_constraint(v, grid):
            count += 1
    return CountResult.make(n, count)


def growth_ratio(counts: Sequence[CountResult], step: int) -> list[float]:
    """Successive ratios ``count(n + step) / count(n)``."""
    ns = [c.n for c in counts]
    if any(not isinstance(x, int) for x in ns):
        raise ParameterError("growth ratios need 1-D counts")
    for x, y in zip(ns, ns[1:]):
        if y - x != step:
            raise ParameterError(f"lengths {ns} are not an arithmetic progression with step {step}")
    return [y.count / x.count for x, y in zip(counts, counts[1:])]


def brute_force_distinct(words: Iterable[Sequence[int]], fn: Callable) -> int:
    """Number of distinct ``fn(word)`` values; tiny reference used by tests and checks."""
    return len({fn(w) for w in words})


def all_words(n: int, q: int = 2):
    return product(range(q), repeat=n)
