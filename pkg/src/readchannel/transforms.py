"""Alphabet conversions and the block-canonical word machinery behind the upper bound.

For ``ell = a * delta + b`` with ``0 < b < delta`` and ``d = delta - b``, a word
of length ``n = ell + t * delta`` splits into alternating blocks::

    [b] [d][b] [d][b] ... [d][b]        (t + a pairs after the leading b-block)

The d-block of pair ``i`` starts at ``di(i) = delta*i - d + 1`` and the b-block
at ``bi(i) = delta*i + 1`` (1-based). Only block weights influence the read
vector, so a word is canonical ("in Pi") when every block is zeros-then-ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .core import BudgetError, ChannelParams, ParameterError, Word


def mu_qary_to_binary(x: Sequence[int] | Word, q: int | None = None) -> tuple[int, ...]:
    """Replace each q-ary symbol ``s`` by the binary block ``1^s 0^(q-1-s)``."""
    q, xs = _alphabet(x, q)
    r = q - 1
    out: list[int] = []
    for s in xs:
        if not 0 <= s < q:
            raise ParameterError(f"symbol {s} outside alphabet of size {q}")
        out.extend([1] * s + [0] * (r - s))
    return tuple(out)


def psi_binary_to_qary(x: Sequence[int] | Word, q: int) -> tuple[int, ...]:
    """Collapse consecutive length-(q-1) binary blocks to their weights."""
    xs = tuple(x)
    r = q - 1
    if q < 2 or len(xs) % r:
        raise ParameterError(f"length {len(xs)} is not a multiple of q-1 = {r}")
    return tuple(sum(xs[i:i + r]) for i in range(0, len(xs), r))


def _alphabet(x, q):
    if isinstance(x, Word):
        return (q or x.q), x.symbols
    if q is None:
        raise ParameterError("alphabet size q is required for plain sequences")
    return q, tuple(int(s) for s in x)


@dataclass(frozen=True)
class BlockIndexGrid:
    """Block positions of a length-``n`` word with ``n = b + k*delta``.

    ``ell`` is optional: the constraint only needs ``(b, delta)``, while the
    rewriting maps also need ``a`` and ``t``.
    """

    delta: int
    b: int
    n: int
    ell: int | None = None

    def __post_init__(self):
        if self.delta < 1 or not 0 <= self.b < self.delta:
            raise ParameterError(f"need 0 <= b < delta, got b={self.b}, delta={self.delta}")
        if self.n < self.b or (self.n - self.b) % self.delta:
            raise ParameterError(f"length {self.n} is not b + k*delta for b={self.b}, delta={self.delta}")
        if self.ell is not None:
            if self.ell % self.delta != self.b:
                raise ParameterError(f"ell={self.ell} does not have residue b={self.b} mod {self.delta}")
            ChannelParams(self.ell, self.delta).t(self.n)

    @classmethod
    def for_channel(cls, p: ChannelParams, n: int) -> "BlockIndexGrid":
        return cls(delta=p.delta, b=p.b, n=n, ell=p.ell)

    @property
    def d(self) -> int:
        return self.delta - self.b

    @property
    def k(self) -> int:
        """Number of (d-block, b-block) pairs after the leading b-block, ``t + a``."""
        return (self.n - self.b) // self.delta

    @property
    def a(self) -> int:
        self._need_ell()
        return self.ell // self.delta

    @property
    def t(self) -> int:
        self._need_ell()
        return (self.n - self.ell) // self.delta

    def _need_ell(self):
        if self.ell is None:
            raise ParameterError("this grid was built without ell")

    def di(self, i: int) -> int:
        return self.delta * i - self.d + 1

    def bi(self, i: int) -> int:
        return self.delta * i + 1

    def blocks(self) -> list[tuple[int, int]]:
        """(1-based start, length) of every block, in word order."""
        out = [(self.bi(0), self.b)]
        for i in range(1, self.k + 1):
            out.append((self.di(i), self.d))
            out.append((self.bi(i), self.b))
        return out

    def pi_size(self) -> int:
        return (self.b + 1) ** (self.k + 1) * (self.d + 1) ** self.k


def _canon_block(length: int, w: int) -> tuple[int, ...]:
    return (0,) * (length - w) + (1,) * w


def pi_words(grid: BlockIndexGrid, fixed_lead: int | None = None) -> Iterator[tuple[int, ...]]:
    """All canonical words on the grid; ``fixed_lead`` pins the leading b-block weight."""
    blocks = grid.blocks()
    choices = [range(length + 1) for _, length in blocks]
    if fixed_lead is not None:
        choices[0] = (fixed_lead,)
    for weights in product(*choices):
        word: list[int] = []
        for (_, length), w in zip(blocks, weights):
            word.extend(_canon_block(length, w))
        yield tuple(word)


def is_pi_word(v: Sequence[int], grid: BlockIndexGrid) -> bool:
    if len(v) != grid.n:
        return False
    for start, length in grid.blocks():
        block = tuple(v[start - 1:start - 1 + length])
        if block != _canon_block(length, sum(block)):
            return False
    return True


def canonicalize_pi(x: Sequence[int], grid: BlockIndexGrid) -> tuple[int, ...]:
    """Sort every block zeros-first; block weights and hence the read vector are kept."""
    if len(x) != grid.n:
        raise ParameterError(f"word length {len(x)} does not match grid length {grid.n}")
    out = list(x)
    for start, length in grid.blocks():
        w = sum(out[start - 1:start - 1 + length])
        out[start - 1:start - 1 + length] = _canon_block(length, w)
    return tuple(out)


def weight_decomposition_check(v: Sequence[int], p: ChannelParams) -> bool:
    """Each window weight equals its leading b-block plus ``a`` (d-block, b-block) pairs."""
    n = len(v)
    t = p.t(n)
    a, b, d, delta = p.a, p.b, p.d, p.delta

    def w(start, length):  # 1-based
        return sum(v[start - 1:start - 1 + length])

    for i in range(t + 1):
        direct = w(delta * i + 1, p.ell)
        split = w(delta * i + 1, b) + sum(
            w(delta * (i + j) - d + 1, d) + w(delta * (i + j) + 1, b) for j in range(1, a + 1)
        )
        if direct != split:
            return False
    return True


def _require_upper_regime(grid: BlockIndexGrid):
    grid._need_ell()
    if not (grid.ell > 2 * grid.delta and grid.b > 0):
        raise ParameterError(
            f"needs ell > 2*delta and delta not dividing ell, got ell={grid.ell}, delta={grid.delta}"
        )


def _matches(v, start: int, pattern: Sequence[int | None]) -> bool:
    """``None`` entries in ``pattern`` match anything."""
    if start < 1 or start - 1 + len(pattern) > len(v):
        return False
    return all(p is None or v[start - 1 + j] == p for j, p in enumerate(pattern))


def phi_pattern(grid: BlockIndexGrid) -> list[int | None]:
    b, d = grid.b, grid.d
    return [1] * d + [0] * b + [None] * (grid.ell - 2 * b) + [1] * b + [0] * d


def phi(v: Sequence[int], grid: BlockIndexGrid) -> tuple[int, ...]:
    """Read-vector preserving rewrite of a canonical word.

    For ``i = 1 .. t-1`` in order, a window ``1^d 0^b u 1^b 0^d`` at ``di(i)``
    becomes ``0 1^(d-1) 0^(b-1) 1 u 0 1^(b-1) 0^(d-1) 1``.
    """
    _require_upper_regime(grid)
    if not is_pi_word(v, grid):
        raise ParameterError("phi is defined on canonical (Pi) words only")
    b, d = grid.b, grid.d
    pattern = phi_pattern(grid)
    head = [0] + [1] * (d - 1) + [0] * (b - 1) + [1]
    tail = [0] + [1] * (b - 1) + [0] * (d - 1) + [1]
    out = list(v)
    for i in range(1, grid.t):
        s = grid.di(i)
        if _matches(out, s, pattern):
            out[s - 1:s - 1 + d + b] = head
            e = s - 1 + len(pattern)
            out[e - b - d:e] = tail
    return tuple(out)


def has_phi_window(v: Sequence[int], grid: BlockIndexGrid) -> bool:
    """True if some ``di(i)``, ``1 <= i <= t-1``, starts a ``1^d 0^b u 1^b 0^d`` window."""
    pattern = phi_pattern(grid)
    return any(_matches(v, grid.di(i), pattern) for i in range(1, grid.t))


def build_code_C(n: int, p: ChannelParams, *, budget: int = 1 << 22) -> set[tuple[int, ...]]:
    """Image of ``phi`` over all canonical words of length ``n``."""
    grid = BlockIndexGrid.for_channel(p, n)
    _require_upper_regime(grid)
    if grid.pi_size() > budget:
        raise BudgetError(f"{grid.pi_size()} canonical words exceeds the budget {budget}")
    return {phi(v, grid) for v in pi_words(grid)}


def forbidden_block_pattern(b: int, delta: int) -> tuple[int, ...]:
    d = delta - b
    return (1,) * d + (0,) * b + (1,) * d + (0,) * b


def check_L_constraint(v: Sequence[int], grid: BlockIndexGrid) -> bool:
    """True iff no ``di(i)`` starts ``1^d 0^b 1^d 0^b`` (only windows that fit are tested)."""
    pattern = forbidden_block_pattern(grid.b, grid.delta)
    n = len(v)
    i = 1
    while grid.di(i) + 2 * grid.delta - 1 <= n:
        if _matches(v, grid.di(i), pattern):
            return False
        i += 1
    return True


def g_map(v: Sequence[int], grid: BlockIndexGrid) -> tuple[int, ...]:
    """Injection of the rewritten code into words whose prefix satisfies the constraint.

    ``grid`` describes the full length of ``v`` (``n + a*delta``). Both ``alpha``
    and ``gamma`` are read before the conditional write of each iteration.
    """
    _require_upper_regime(grid)
    a, b, d, delta = grid.a, grid.b, grid.d, grid.delta
    if a < 2:
        raise ParameterError(f"g needs a >= 2, got a={a}")
    if len(v) != grid.n:
        raise ParameterError(f"word length {len(v)} does not match grid length {grid.n}")
    pattern = forbidden_block_pattern(b, delta)
    nu = list(v)
    for i in range(1, grid.t):
        alpha = sum(nu[grid.bi(i + a) - 1:grid.bi(i + a) - 1 + b])
        gamma = sum(nu[grid.di(i + a + 1) - 1:grid.di(i + a + 1) - 1 + d])
        if _matches(nu, grid.di(i), pattern):
            s = grid.di(i + 1) - 1
            nu[s:s + delta] = [0] * gamma + [1] * (d - gamma) + [0] * alpha + [1] * (b - alpha)
            s = grid.bi(i + a) - 1
            nu[s:s + delta] = [1] * b + [0] * d
    return tuple(nu)
