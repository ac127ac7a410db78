"""Value types and weight/slice primitives shared by every other module.

Public indices are 1-based (window starts, block starts), matching the usual
notation for the read channel. Storage is plain tuples, so every type here is
immutable and hashable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class ParameterError(ValueError):
    """Invalid channel parameters or a violated precondition."""


class RangeError(IndexError):
    """A slice or window that does not fit inside its word or matrix."""


class BudgetError(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


class NumericError(ArithmeticError):
    """An iterative numeric routine failed to converge."""


@dataclass(frozen=True)
class ChannelParams:
    """Window length ``ell`` and window step ``delta`` of one channel axis."""

    ell: int
    delta: int

    def __post_init__(self):
        if int(self.ell) != self.ell or int(self.delta) != self.delta:
            raise ParameterError(f"ell and delta must be integers, got {self.ell}, {self.delta}")
        if self.ell < 1 or self.delta < 1:
            raise ParameterError(f"need ell >= 1 and delta >= 1, got ell={self.ell}, delta={self.delta}")

    @property
    def a(self) -> int:
        return self.ell // self.delta

    @property
    def b(self) -> int:
        return self.ell % self.delta

    @property
    def d(self) -> int:
        return self.delta - self.b

    def windows(self, n: int) -> int:
        """Number of read windows ``t + 1`` for an input of length ``n``."""
        return self.t(n) + 1

    def t(self, n: int) -> int:
        if n < self.ell or (n - self.ell) % self.delta:
            raise ParameterError(
                f"length {n} incompatible with (ell, delta)=({self.ell}, {self.delta}): "
                "need n >= ell and delta | (n - ell)"
            )
        return (n - self.ell) // self.delta

    def valid_lengths(self, n_max: int) -> list[int]:
        return list(range(self.ell, n_max + 1, self.delta))

    def scaled(self, r: int) -> "ChannelParams":
        return ChannelParams(r * self.ell, r * self.delta)


@dataclass(frozen=True)
class Word:
    """A word over ``{0, ..., q-1}``. ``q = 2`` gives an ordinary binary word."""

    symbols: tuple[int, ...]
    q: int = 2

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        if self.q < 2:
            raise ParameterError(f"alphabet size must be >= 2, got {self.q}")
        bad = [s for s in self.symbols if not 0 <= s < self.q]
        if bad:
            raise ParameterError(f"symbols {bad} outside alphabet of size {self.q}")

    @classmethod
    def from_string(cls, text: str, q: int = 2) -> "Word":
        return cls(tuple(int(c) for c in text if not c.isspace() and c != ","), q)

    @classmethod
    def from_packed(cls, value: int, n: int) -> "Word":
        """Inverse of :attr:`packed`; the first symbol is the most significant bit."""
        return cls(tuple((value >> (n - 1 - i)) & 1 for i in range(n)))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item):
        return self.symbols[item]

    def __str__(self):
        sep = "" if self.q <= 10 else ","
        return sep.join(str(s) for s in self.symbols)

    @property
    def weight(self) -> int:
        return weight(self.symbols)

    @property
    def packed(self) -> int:
        """Binary words packed into an int, first symbol most significant."""
        if self.q != 2:
            raise ParameterError("packed representation is defined for binary words only")
        value = 0
        for s in self.symbols:
            value = (value << 1) | s
        return value

    def subvector(self, i: int, length: int) -> "Word":
        return Word(subvector(self.symbols, i, length), self.q)


QWord = Word


@dataclass(frozen=True)
class BitMatrix:
    """Rectangular matrix over ``{0, ..., q-1}`` stored row-major as nested tuples."""

    rows: tuple[tuple[int, ...], ...]
    q: int = 2

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ParameterError("matrix rows must all have the same length")
        if any(not 0 <= x < self.q for r in rows for x in r):
            raise ParameterError(f"matrix entries outside alphabet of size {self.q}")

    @classmethod
    def from_array(cls, array, q: int = 2) -> "BitMatrix":
        return cls(tuple(map(tuple, np.asarray(array).tolist())), q)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.shape)

    @property
    def weight(self) -> int:
        return sum(map(sum, self.rows))

    def submatrix(self, k1: int, l1: int, k2: int, l2: int) -> "BitMatrix":
        return submatrix(self, k1, l1, k2, l2)


def weight(w: Sequence[int] | Word | BitMatrix) -> int:
    """L1 weight: the sum of the symbols (the Hamming weight for binary input)."""
    if isinstance(w, BitMatrix):
        return w.weight
    if isinstance(w, Word):
        w = w.symbols
    return int(sum(w))


def subvector(w: Sequence[int], i: int, length: int) -> tuple[int, ...]:
    """The ``length`` symbols starting at 1-based position ``i``."""
    n = len(w)
    if i < 1 or length < 0 or i + length - 1 > n:
        raise RangeError(f"slice [{i}; {length}] does not fit in a word of length {n}")
    return tuple(w[i - 1:i - 1 + length])


def submatrix(B: BitMatrix, k1: int, l1: int, k2: int, l2: int) -> BitMatrix:
    """The ``l1 x l2`` window whose top-left corner is row ``k1``, column ``k2`` (1-based)."""
    n1, n2 = B.shape
    if k1 < 1 or k2 < 1 or l1 < 0 or l2 < 0 or k1 + l1 - 1 > n1 or k2 + l2 - 1 > n2:
        raise RangeError(f"window rows {k1}+{l1}, cols {k2}+{l2} does not fit in a {n1}x{n2} matrix")
    return BitMatrix(tuple(r[k2 - 1:k2 - 1 + l2] for r in B.rows[k1 - 1:k1 - 1 + l1]), B.q)


def int_matrix(rows) -> np.ndarray:
    """Validate and return a square exact-integer matrix as an int64 array."""
    A = np.asarray(rows)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {A.shape}")
    if A.size and not np.issubdtype(A.dtype, np.integer):
        if not np.all(np.equal(np.mod(A, 1), 0)):
            raise ParameterError("matrix entries must be integers")
    return A.astype(np.int64)
