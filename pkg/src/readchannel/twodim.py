"""Two-dimensional read channel: alphabet folding, code folding and capacity reductions.

Axis 1 indexes rows and axis 2 columns. Windows are ``ell1 x ell2`` and move by
``delta1`` rows and ``delta2`` columns.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .core import BitMatrix, ChannelParams, ParameterError
from .enumerate import DEFAULT_BUDGET, count_read_matrices, count_read_vectors
from .spectral import Capacity, CapacityBounds, CapacityValue, qary_capacity


@dataclass(frozen=True)
class Params2D:
    p1: ChannelParams
    p2: ChannelParams
    q: int = 2

    def __post_init__(self):
        if self.q < 2:
            raise ParameterError(f"alphabet size must be >= 2, got {self.q}")

    @classmethod
    def of(cls, ell: tuple[int, int], delta: tuple[int, int], q: int = 2) -> "Params2D":
        return cls(ChannelParams(ell[0], delta[0]), ChannelParams(ell[1], delta[1]), q)

    def transposed(self) -> "Params2D":
        return Params2D(self.p2, self.p1, self.q)


def mu_2d(B: BitMatrix, q1: int, q2: int) -> BitMatrix:
    """Replace each entry ``s`` by ``0^(q1*q2-s) 1^s`` folded row-major into a ``q1 x q2`` block."""
    if q1 < 1 or q2 < 1 or B.q != q1 * q2 + 1:
        raise ParameterError(f"alphabet size {B.q} is not q1*q2+1 for q1={q1}, q2={q2}")
    n1, n2 = B.shape
    out = np.zeros((n1 * q1, n2 * q2), dtype=np.int64)
    cells = q1 * q2
    for i, row in enumerate(B.rows):
        for j, s in enumerate(row):
            flat = [0] * (cells - s) + [1] * s
            out[i * q1:(i + 1) * q1, j * q2:(j + 1) * q2] = np.reshape(flat, (q1, q2))
    return BitMatrix.from_array(out)


def lambda_2d(B: BitMatrix, q1: int, q2: int) -> BitMatrix:
    """Collapse each ``q1 x q2`` block of a binary matrix to its weight."""
    n1, n2 = B.shape
    if B.q != 2:
        raise ParameterError("block collapse expects a binary matrix")
    if q1 < 1 or q2 < 1 or n1 % q1 or n2 % q2:
        raise ParameterError(f"shape {n1}x{n2} is not divisible into {q1}x{q2} blocks")
    A = B.to_array().reshape(n1 // q1, q1, n2 // q2, q2)
    return BitMatrix.from_array(A.sum(axis=(1, 3)), q=q1 * q2 + 1)


def fold_1d_code_to_2d(C: Iterable[Sequence[int]], params: Params2D, n1: int) -> list[BitMatrix]:
    """Stack ``t1 + 1`` codewords as column-folded strips of height ``delta1``.

    ``C`` must be a ``(delta1*ell2, delta1*delta2)`` read code of length
    ``n2*delta1``. Strip ``k`` fills the last ``delta1`` rows of the ``k``-th
    row window and the ``ell1 - delta1`` rows above the first strip stay zero.
    """
    p1, p2 = params.p1, params.p2
    if p1.delta > p1.ell:
        raise ParameterError("strip folding needs delta1 <= ell1")
    t1 = p1.t(n1)
    code = [tuple(c) for c in C]
    if not code:
        return []
    length = len(code[0])
    if any(len(c) != length for c in code) or length % p1.delta:
        raise ParameterError("codewords must share a length divisible by delta1")
    n2 = length // p1.delta
    p2.t(n2)
    strips = [np.array(c).reshape(n2, p1.delta).T for c in code]
    top = p1.ell - p1.delta
    out = []
    for choice in product(range(len(code)), repeat=t1 + 1):
        M = np.zeros((n1, n2), dtype=np.int64)
        for k, idx in enumerate(choice):
            r = top + k * p1.delta
            M[r:r + p1.delta] = strips[idx]
        out.append(BitMatrix.from_array(M, q=params.q))
    return out


def _lower(c: Capacity) -> CapacityValue:
    return c.lower if isinstance(c, CapacityBounds) else c


def _upper(c: Capacity) -> CapacityValue:
    return c.upper if isinstance(c, CapacityBounds) else c


def _scale(c: Capacity, factor: float, note: str) -> Capacity:
    if isinstance(c, CapacityBounds):
        return CapacityBounds(c.lower.scaled(factor, c.q, f"{note}; {c.lower.provenance}"),
                              c.upper.scaled(factor, c.q, f"{note}; {c.upper.provenance}"))
    return c.scaled(factor, c.q, f"{note}; {c.provenance}")


def capacity_2d(params: Params2D) -> Capacity:
    """Capacity in bits per cell, exact where a 1-D reduction applies and a bound pair otherwise."""
    exact = _reduced(params)
    if exact is not None:
        return exact
    p1, p2, q = params.p1, params.p2, params.q
    if p1.delta > p1.ell:
        # the strip lower bound needs delta1 <= ell1; the transpose then falls in a reduction regime
        return _scale(_reduced(params.transposed()), 1.0, "transposed")
    lower = _lower(qary_capacity(ChannelParams(p1.delta * p2.ell, p1.delta * p2.delta), q))
    upper = _upper(qary_capacity(p1, q))
    return CapacityBounds(
        CapacityValue("lower_bound", lower.value, f"strip-folded 1-D code; {lower.provenance}", q),
        CapacityValue("upper_bound", upper.value, f"unit column step; {upper.provenance}", q),
    )


def _reduced(params: Params2D) -> Capacity | None:
    p1, p2, q = params.p1, params.p2, params.q
    if p2.delta == 1:
        return _scale(qary_capacity(p1, q), 1.0, "unit column step")
    if p2.delta >= p2.ell:
        base = qary_capacity(ChannelParams(p2.ell * p1.ell, p2.ell * p1.delta), q)
        return _scale(base, p2.ell / p2.delta, "disjoint column windows")
    if p2.ell % p2.delta == 0:
        base = qary_capacity(ChannelParams(p2.delta * p1.ell, p2.delta * p1.delta), q)
        return _scale(base, 1.0, "column blocks collapsed")
    return None


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: int
    rhs: int
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def finite_equalities_check(
    params: Params2D,
    n1: int,
    n2: int,
    *,
    q1: int | None = None,
    q2: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[IdentityCheck]:
    """Brute-force count identities that apply to ``params`` at size ``n1 x n2``.

    Every count is exhaustive on both sides; nothing is derived from a formula.
    """
    p1, p2, q = params.p1, params.p2, params.q
    p1.t(n1)
    t2 = p2.t(n2)
    lhs = count_read_matrices(n1, n2, p1, p2, q, budget=budget).count
    out = []

    if p2.ell % p2.delta == 0 and n2 % p2.delta == 0:
        collapsed_q = p2.delta * (q - 1) + 1
        rhs = count_read_matrices(n1, n2 // p2.delta, p1, ChannelParams(p2.ell // p2.delta, 1),
                                  collapsed_q, budget=budget).count
        out.append(IdentityCheck("column block collapse", lhs, rhs, lhs == rhs,
                                 f"n2 = {n2 // p2.delta}*delta2, alphabet {collapsed_q}"))

    if q1 is not None and q2 is not None:
        if q != q1 * q2 + 1:
            raise ParameterError(f"q={q} is not q1*q2+1 for q1={q1}, q2={q2}")
        rhs = count_read_matrices(q1 * n1, q2 * n2, p1.scaled(q1), p2.scaled(q2), 2, budget=budget).count
        out.append(IdentityCheck("alphabet folding", lhs, rhs, lhs == rhs, f"q1={q1}, q2={q2}"))

    unit = count_read_matrices(n1, n2, p1, ChannelParams(p2.ell, 1), q, budget=budget).count
    out.append(IdentityCheck("unit column step dominates", lhs, unit, lhs <= unit, "lhs <= rhs"))

    if p2.delta >= p2.ell:
        strip = count_read_vectors(n1 * p2.ell, ChannelParams(p2.ell * p1.ell, p2.ell * p1.delta), q,
                                   budget=budget).count
        rhs = strip ** (t2 + 1)
        out.append(IdentityCheck("disjoint column windows product", lhs, rhs, lhs == rhs,
                                 f"exponent t2+1 = {t2 + 1}"))
    return out


def report_json(checks: list[IdentityCheck]) -> str:
    return json.dumps([c.as_dict() for c in checks])
