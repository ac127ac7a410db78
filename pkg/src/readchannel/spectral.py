"""Characteristic polynomials, Perron eigenvalues and capacity values.

Capacities are stored in bits per symbol. For a q-ary channel the value in
q-ary units (log base q) is available as :attr:`CapacityValue.qary_units`.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from itertools import product

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import ChannelParams, NumericError, ParameterError, int_matrix
from .stategraph import LabeledGraph, build_G, subset_determinize

MAX_ITER = 10**6


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial, ``coeffs[k]`` multiplies ``x**k``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs != (0,) else -1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, u in enumerate(self.coeffs):
            for j, v in enumerate(other.coeffs):
                out[i + j] += u * v
        return Polynomial(tuple(out))

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and k) else str(mag)
            if k:
                body += "x" if k == 1 else f"x^{k}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        return text + "".join(f" {s} {b}" for s, b in terms[1:])


@dataclass(frozen=True)
class CapacityValue:
    kind: str  # "exact", "lower_bound" or "upper_bound"
    value: float  # bits per symbol
    provenance: str
    q: int = 2

    def __post_init__(self):
        if self.kind not in ("exact", "lower_bound", "upper_bound"):
            raise ParameterError(f"unknown capacity kind {self.kind!r}")

    @property
    def qary_units(self) -> float:
        return self.value / math.log2(self.q)

    def scaled(self, factor: float, q: int, provenance: str | None = None) -> "CapacityValue":
        return CapacityValue(self.kind, self.value * factor, provenance or self.provenance, q)


@dataclass(frozen=True)
class CapacityBounds:
    lower: CapacityValue
    upper: CapacityValue
    kind: str = "bounds"

    @property
    def q(self) -> int:
        return self.lower.q

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lower.value - tol <= x <= self.upper.value + tol


Capacity = CapacityValue | CapacityBounds


def char_poly(A) -> Polynomial:
    """``det(xI - A)`` by Faddeev-LeVerrier in exact integer arithmetic."""
    M0 = int_matrix(A)
    n = M0.shape[0]
    A_ = [[int(v) for v in row] for row in M0.tolist()]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = _matmul(A_, M)
        for i in range(n):
            AM[i][i] += coeffs[n - k + 1]
        M = AM
        tr = sum(sum(A_[i][j] * M[j][i] for j in range(n)) for i in range(n))
        coeffs[n - k] = -tr // k
    return Polynomial(tuple(coeffs))


def _matmul(X, Y):
    n = len(X)
    cols = list(zip(*Y)) if n else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in X]


def perron_eigenvalue(A, tol: float = 1e-12, *, max_iter: int = MAX_ITER) -> float:
    """Spectral radius of a non-negative matrix.

    Each strongly connected component with a cycle is iterated separately on
    ``B + I`` (primitive, so the iteration converges even for periodic ``B``)
    until the Collatz-Wielandt bounds agree to ``tol``. Acyclic input gives 0.
    """
    if tol <= 0:
        raise ParameterError("tol must be positive")
    S = csr_matrix(A, dtype=np.float64) if not isinstance(A, csr_matrix) else A.astype(np.float64)
    if S.shape[0] != S.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {S.shape}")
    if S.nnz and S.data.min() < 0:
        raise ParameterError("matrix must be non-negative")
    n = S.shape[0]
    if n == 0 or S.nnz == 0:
        return 0.0
    n_comp, labels = connected_components(S, directed=True, connection="strong")
    best = 0.0
    for c in range(n_comp):
        idx = np.flatnonzero(labels == c)
        B = S[idx][:, idx]
        if B.nnz == 0:
            continue
        if len(idx) == 1:
            best = max(best, float(B[0, 0]))
            continue
        best = max(best, _power_iteration(B, tol, max_iter))
    return best


def _power_iteration(B: csr_matrix, tol: float, max_iter: int) -> float:
    n = B.shape[0]
    row_nnz = int(np.diff(B.indptr).max()) + 1
    # summation rounding puts a floor under attainable relative agreement
    eff_tol = max(tol, 4 * row_nnz * np.finfo(np.float64).eps)
    x = np.ones(n)
    for _ in range(max_iter):
        y = B @ x + x
        r = y / x
        lo, hi = r.min(), r.max()
        if hi - lo <= eff_tol * hi:
            return 0.5 * (lo + hi) - 1.0
        x = y / y.max()
    raise NumericError(f"power iteration did not converge in {max_iter} steps")


def interval_graph_root(p: ChannelParams) -> float:
    """Largest root of ``x^2 - (ell+1)x + (ell-delta)(ell-delta+1)``."""
    l, s = p.ell, p.ell - p.delta
    return (l + 1 + math.sqrt((l + 1) ** 2 - 4 * s * (s + 1))) / 2


def constraint_root(b: int, delta: int) -> float:
    m = (b + 1) * (delta - b + 1)
    return (m - 1 + math.sqrt((m - 1) ** 2 + 4 * (m - 1))) / 2


def regime(p: ChannelParams) -> str:
    if p.delta == 1:
        return "identity"
    if p.ell <= p.delta:
        return "non-overlapping"
    if p.ell % p.delta == 0:
        return "multiple"
    if p.ell < 2 * p.delta:
        return "interval"
    return "bounds"


def capacity_closed_form(p: ChannelParams) -> Capacity:
    l, d = p.ell, p.delta
    r = regime(p)
    if r == "identity":
        return CapacityValue("exact", 1.0, "identity step: every word is recoverable")
    if r == "non-overlapping":
        return CapacityValue("exact", math.log2(l + 1) / d, "non-overlapping windows")
    if r == "multiple":
        return CapacityValue("exact", math.log2(d + 1) / d, "window length a multiple of the step")
    if r == "interval":
        return CapacityValue("exact", math.log2(interval_graph_root(p)) / d, "interval automaton eigenvalue")
    lower = CapacityValue("lower_bound", math.log2(d + 1) / d, "code built from step-multiple windows")
    upper = constraint_capacity(p.b, d)
    return CapacityBounds(lower, upper)


def constraint_capacity(b: int, delta: int) -> CapacityValue:
    """Capacity of the block constraint avoiding ``1^d 0^b 1^d 0^b``, an upper bound."""
    if not 0 < b < delta:
        raise ParameterError(f"need 0 < b < delta, got b={b}, delta={delta}")
    return CapacityValue("upper_bound", math.log2(constraint_root(b, delta)) / delta, "block constraint eigenvalue")


def build_constraint_graph(b: int, delta: int) -> tuple[LabeledGraph, np.ndarray]:
    """Complete digraph on the canonical (d-block, b-block) pairs without the ``1^d 0^b`` self-loop.

    Node ``0^alpha 1^(d-alpha) 0^gamma 1^(b-gamma)``; an edge is labeled by the
    pair it enters.
    """
    if not 0 < b < delta:
        raise ParameterError(f"need 0 < b < delta, got b={b}, delta={delta}")
    d = delta - b
    nodes = [
        (0,) * alpha + (1,) * (d - alpha) + (0,) * gamma + (1,) * (b - gamma)
        for alpha, gamma in product(range(d + 1), range(b + 1))
    ]
    banned = (1,) * d + (0,) * b
    edges = [(s, t, t) for s in nodes for t in nodes if not (s == t == banned)]
    G = LabeledGraph(nodes, edges, None, "constraint")
    return G, G.adjacency()


def qary_capacity(p: ChannelParams, q: int) -> Capacity:
    """Capacity of the q-ary channel through the binary channel with parameters scaled by ``q-1``."""
    if q < 2:
        raise ParameterError(f"alphabet size must be >= 2, got {q}")
    if q == 2:
        return capacity_closed_form(p)
    base = capacity_closed_form(p.scaled(q - 1))
    tag = f"binary ({(q - 1) * p.ell},{(q - 1) * p.delta}) scaled by {q - 1}"
    if isinstance(base, CapacityBounds):
        return CapacityBounds(
            base.lower.scaled(q - 1, q, f"{tag}; {base.lower.provenance}"),
            base.upper.scaled(q - 1, q, f"{tag}; {base.upper.provenance}"),
        )
    return base.scaled(q - 1, q, f"{tag}; {base.provenance}")


def determinized_capacity(p: ChannelParams, *, budget: int = 1 << 16) -> float:
    """``log2(lambda) / delta`` of the subset automaton of the overlap graph."""
    D = subset_determinize(build_G(p), budget=budget)
    return math.log2(perron_eigenvalue(_sparse_adjacency(D))) / p.delta


def _sparse_adjacency(D: LabeledGraph) -> csr_matrix:
    index = {v: i for i, v in enumerate(D.nodes)}
    rows = [index[s] for s, _, _ in D.edges]
    cols = [index[t] for _, _, t in D.edges]
    n = len(D.nodes)
    return csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))


@dataclass(frozen=True)
class TableRow:
    ell: int
    delta: int
    regime: str
    value: float | None
    lower: float | None
    upper: float | None
    provenance: str
    automaton: float | None = None


def capacity_table(
    delta: int, ell_range, *, with_automaton: bool = False, budget: int = 1 << 16
) -> list[TableRow]:
    """One row per ``ell``; ``with_automaton`` adds the subset-automaton value where ``delta <= ell``."""
    rows = []
    for ell in ell_range:
        p = ChannelParams(ell, delta)
        cap = capacity_closed_form(p)
        auto = determinized_capacity(p, budget=budget) if with_automaton and delta <= ell else None
        if isinstance(cap, CapacityBounds):
            rows.append(TableRow(ell, delta, regime(p), None, cap.lower.value, cap.upper.value,
                                 f"{cap.lower.provenance} / {cap.upper.provenance}", auto))
        else:
            rows.append(TableRow(ell, delta, regime(p), cap.value, None, None, cap.provenance, auto))
    return rows


def table_to_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    with_auto = any(r.automaton is not None for r in rows)
    header = ["ell", "delta", "regime", "value_or_lower", "upper", "provenance"]
    w.writerow(header + (["automaton"] if with_auto else []))
    for r in rows:
        first = r.value if r.value is not None else r.lower
        line = [r.ell, r.delta, r.regime, _fmt(first), _fmt(r.upper), r.provenance]
        w.writerow(line + ([_fmt(r.automaton)] if with_auto else []))
    return buf.getvalue()


def table_to_json(rows: list[TableRow]) -> str:
    return json.dumps([asdict(r) for r in rows])


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.6f}"
