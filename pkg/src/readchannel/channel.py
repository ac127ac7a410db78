"""The read channel: window weights of a word (1-D) or a matrix (2-D).

Read vectors are indexed from 0: entry ``i`` is the weight of the window that
starts at 1-based position ``i * delta + 1``, for ``i = 0 .. t`` where
``t = (n - ell) / delta``.
"""
from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .core import BitMatrix, ChannelParams, ParameterError, Word

# Above this length the sliding update is used instead of summing each window.
INCREMENTAL_THRESHOLD = 256


def _symbols(x) -> tuple[int, ...]:
    if isinstance(x, Word):
        return x.symbols
    return tuple(int(s) for s in x)


def read_vector(x: Sequence[int] | Word, p: ChannelParams, *, incremental: bool | None = None) -> tuple[int, ...]:
    """Window weights of ``x`` under ``p``; works for binary and q-ary words alike."""
    xs = _symbols(x)
    t = p.t(len(xs))
    if incremental is None:
        incremental = len(xs) > INCREMENTAL_THRESHOLD
    if not incremental:
        return tuple(sum(xs[i * p.delta:i * p.delta + p.ell]) for i in range(t + 1))

    out = [sum(xs[:p.ell])]
    cur = out[0]
    for i in range(1, t + 1):
        start = i * p.delta
        # drop the symbols that left the window, add the ones that entered
        cur -= sum(xs[start - p.delta:min(start, (i - 1) * p.delta + p.ell)])
        cur += sum(xs[max(start, (i - 1) * p.delta + p.ell):start + p.ell])
        out.append(cur)
    return tuple(out)


def read_matrix(B: BitMatrix, p1: ChannelParams, p2: ChannelParams) -> tuple[tuple[int, ...], ...]:
    """Weights of the ``ell1 x ell2`` windows taken every ``delta1`` rows and ``delta2`` columns."""
    n1, n2 = B.shape
    t1, t2 = p1.t(n1), p2.t(n2)
    A = B.to_array()
    return tuple(
        tuple(
            int(A[i * p1.delta:i * p1.delta + p1.ell, j * p2.delta:j * p2.delta + p2.ell].sum())
            for j in range(t2 + 1)
        )
        for i in range(t1 + 1)
    )


def window_sums(words: np.ndarray, p: ChannelParams) -> np.ndarray:
    """Read vectors of every row of an ``(N, n)`` symbol array, as an ``(N, t+1)`` array."""
    N, n = words.shape
    t = p.t(n)
    prefix = np.zeros((N, n + 1), dtype=np.int32)
    np.cumsum(words, axis=1, out=prefix[:, 1:])
    starts = np.arange(t + 1) * p.delta
    return prefix[:, starts + p.ell] - prefix[:, starts]


def matrix_window_sums(mats: np.ndarray, p1: ChannelParams, p2: ChannelParams) -> np.ndarray:
    """Read matrices of a stack of ``(N, n1, n2)`` matrices, as ``(N, t1+1, t2+1)``."""
    N, n1, n2 = mats.shape
    t1, t2 = p1.t(n1), p2.t(n2)
    S = np.zeros((N, n1 + 1, n2 + 1), dtype=np.int32)
    S[:, 1:, 1:] = mats.cumsum(axis=1).cumsum(axis=2)
    r = np.arange(t1 + 1) * p1.delta
    c = np.arange(t2 + 1) * p2.delta
    R0, C0 = np.ix_(r, c)
    R1, C1 = np.ix_(r + p1.ell, c + p2.ell)
    return S[:, R1, C1] - S[:, R0, C1] - S[:, R1, C0] + S[:, R0, C0]


def max_entry(p: ChannelParams, q: int = 2) -> int:
    return p.ell * (q - 1)


def to_json(output) -> str:
    """Serialize a read vector or read matrix (row-major nested arrays)."""
    if isinstance(output, np.ndarray):
        output = output.tolist()
    return json.dumps(output if not isinstance(output, tuple) else _listify(output))


def _listify(x):
    if isinstance(x, (tuple, list)):
        return [_listify(v) for v in x]
    return int(x)


def check_divisible(n: int, p: ChannelParams, axis: str = "") -> None:
    try:
        p.t(n)
    except ParameterError as exc:
        raise ParameterError(f"{axis + ': ' if axis else ''}{exc}") from None
