"""Multilinear monomials over GF(2) and evaluation matrices.

A point of F_2^m is addressed by an integer index ``i`` in ``[0, 2**m)``;
variable ``x_j`` (1-based) takes the value of bit ``j - 1`` of ``i``.
A monomial is the set of variables it contains, stored as a bit mask in the
same convention, so ``M(u) = 1`` exactly when ``u & mask == mask``.

Bases are ordered graded-lexicographically: by degree, then by mask value.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence, Union

from .exceptions import DimensionError
from .gf2 import BitMatrix, BitVector

Point = Union[int, Sequence[int]]

# Largest evaluation matrix (in bits) materialized without an explicit override.
DEFAULT_MATRIX_BUDGET = 1 << 28


def binom_le(m: int, r: int) -> int:
    """Number of monomials of degree at most ``r`` in ``m`` variables."""
    if r < 0:
        return 0
    return sum(comb(m, i) for i in range(min(r, m) + 1))


def point_index(u: Point, m: int) -> int:
    """Normalise a point (index or coordinate sequence) to its integer index."""
    if isinstance(u, numbers.Integral) and not isinstance(u, bool):
        u = int(u)
        if not 0 <= u < (1 << m):
            raise DimensionError(f"point index {u} outside [0, 2^{m})")
        return u
    coords = list(u)
    if len(coords) != m:
        raise DimensionError(f"point has {len(coords)} coordinates, expected {m}")
    idx = 0
    for j, c in enumerate(coords):
        if c not in (0, 1):
            raise ValueError("point coordinates must be 0 or 1")
        idx |= c << j
    return idx


def point_coords(i: int, m: int) -> tuple[int, ...]:
    """Coordinates ``(x_1, ..., x_m)`` of point index ``i``."""
    return tuple((i >> j) & 1 for j in range(m))


@dataclass(frozen=True, order=True)
class Monomial:
    """Product of the variables selected by ``mask`` (bit j-1 <-> x_j)."""

    mask: int
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be non-negative")
        if self.mask < 0 or self.mask >> self.m:
            raise ValueError(f"mask {self.mask:#x} uses variables beyond x_{self.m}")

    @classmethod
    def from_vars(cls, variables: Sequence[int], m: int) -> "Monomial":
        """Build from 1-based variable indices, e.g. ``(1, 3)`` for x1*x3."""
        mask = 0
        for v in variables:
            if not 1 <= v <= m:
                raise ValueError(f"variable x_{v} outside x_1..x_{m}")
            mask |= 1 << (v - 1)
        return cls(mask, m)

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(j + 1 for j in range(self.m) if (self.mask >> j) & 1)

    def __call__(self, u: Point) -> int:
        return evaluate(self, u)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return product(self, other)

    def __str__(self) -> str:
        if not self.mask:
            return "1"
        return "".join(f"x{v}" for v in self.variables)


def evaluate(M: Monomial, u: Point) -> int:
    """Value of ``M`` at point ``u``; the constant monomial is 1 everywhere."""
    i = point_index(u, M.m)
    return int(i & M.mask == M.mask)


def product(M1: Monomial, M2: Monomial) -> Monomial:
    """Product of two monomials; ``x_j**2 == x_j`` on Boolean points."""
    if M1.m != M2.m:
        raise DimensionError(f"monomials over {M1.m} and {M2.m} variables")
    return Monomial(M1.mask | M2.mask, M1.m)


class MonomialBasis:
    """Graded-lex ordered list of all monomials of degree <= r in m variables."""

    __slots__ = ("m", "r", "masks", "_index")

    def __init__(self, m: int, r: int):
        if m < 0 or r < 0:
            raise ValueError("m and r must be non-negative")
        if r > m:
            raise ValueError(f"degree bound r={r} exceeds m={m}")
        self.m = m
        self.r = r
        self.masks: tuple[int, ...] = tuple(_graded_masks(m, r))
        self._index = {mask: i for i, mask in enumerate(self.masks)}

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Monomial]:
        m = self.m
        return (Monomial(mask, m) for mask in self.masks)

    def __getitem__(self, i: int) -> Monomial:
        return Monomial(self.masks[i], self.m)

    def __contains__(self, M) -> bool:
        mask = M.mask if isinstance(M, Monomial) else M
        return mask in self._index

    def __repr__(self) -> str:
        return f"MonomialBasis(m={self.m}, r={self.r}, size={len(self)})"

    def index(self, M: Union[Monomial, int]) -> int:
        """Position of a monomial (or its mask) in the basis."""
        if isinstance(M, Monomial):
            if M.m != self.m:
                raise DimensionError(f"monomial over {M.m} variables, basis over {self.m}")
            mask = M.mask
        else:
            mask = M
        try:
            return self._index[mask]
        except KeyError:
            raise KeyError(f"mask {mask:#x} not in basis of degree <= {self.r}") from None

    @property
    def index_map(self) -> dict[int, int]:
        return dict(self._index)


def _graded_masks(m: int, r: int) -> list[int]:
    by_degree: list[list[int]] = [[] for _ in range(r + 1)]
    for mask in range(1 << m):
        d = mask.bit_count()
        if d <= r:
            by_degree[d].append(mask)
    return [mask for group in by_degree for mask in group]


@lru_cache(maxsize=64)
def enumerate_basis(m: int, r: int) -> MonomialBasis:
    """The basis of all monomials of degree <= ``r`` in ``m`` variables."""
    return MonomialBasis(m, r)


def point_column(u: Point, r: int, m: int | None = None) -> BitVector:
    """All degree-<=r monomial values at ``u``, in basis order."""
    if m is None:
        if isinstance(u, numbers.Integral):
            raise TypeError("m is required when the point is given as an index")
        m = len(u)
    i = point_index(u, m)
    basis = enumerate_basis(m, r)
    bits = 0
    for pos, mask in enumerate(basis.masks):
        if i & mask == mask:
            bits |= 1 << pos
    return BitVector(len(basis), bits)


@lru_cache(maxsize=32)
def variable_rows(m: int) -> tuple[int, ...]:
    """Evaluation vectors of x_1..x_m over all 2^m points, packed as ints."""
    n = 1 << m
    rows = []
    for j in range(m):
        # Point i has x_{j+1} = 1 iff bit j of i is set: blocks of 2^j zeros then ones.
        pattern = ((1 << (1 << j)) - 1) << (1 << j)
        width = 1 << (j + 1)
        while width < n:
            pattern |= pattern << width
            width <<= 1
        rows.append(pattern)
    return tuple(rows)


def iter_monomial_rows(basis: MonomialBasis) -> Iterator[int]:
    """Stream the rows of the evaluation matrix as packed ints, in basis order.

    Each row extends a cached lower-degree row by one variable, so the whole
    matrix ends up in memory; use :func:`iter_rows_dfs` to stream.
    """
    n = 1 << basis.m
    full = (1 << n) - 1
    xs = variable_rows(basis.m)
    cache: dict[int, int] = {0: full}
    for mask in basis.masks:
        if mask not in cache:
            high = mask.bit_length() - 1
            cache[mask] = cache[mask ^ (1 << high)] & xs[high]
        yield cache[mask]


def evaluation_matrix(m: int, r: int, budget: int = DEFAULT_MATRIX_BUDGET) -> BitMatrix:
    """``C(m, <=r) x 2^m`` matrix of monomial values; column i is point i."""
    basis = enumerate_basis(m, r)
    size = len(basis) * (1 << m)
    if size > budget:
        raise MemoryError(f"E({m},{r}) has {size} entries, over budget {budget}")
    return BitMatrix(list(iter_monomial_rows(basis)), 1 << m)


def iter_rows_dfs(m: int, s: int) -> Iterator[tuple[int, int]]:
    """Yield ``(mask, row)`` for every monomial of degree <= ``s``.

    Depth-first over variable sets, so at most ``s + 1`` rows are held at
    once; the yield order is not the basis order.
    """
    xs = variable_rows(m)
    full = (1 << (1 << m)) - 1
    stack = [(0, full, 0)]
    while stack:
        mask, row, start = stack.pop()
        yield mask, row
        if mask.bit_count() == s:
            continue
        for j in range(m - 1, start - 1, -1):
            stack.append((mask | (1 << j), row & xs[j], j + 1))
