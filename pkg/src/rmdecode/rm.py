"""Reed-Muller codes RM(m, r): encoding, membership, syndromes, erasures.

Codeword coordinate ``i`` is the polynomial's value at point index ``i``
(see :mod:`rmdecode.monomial` for the point convention). The parity checks
of RM(m, r) are the rows of the evaluation matrix E(m, m - r - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import AmbiguousErasures, DimensionError, InconsistentErasures
from .gf2 import BitMatrix, BitVector, _rank_ints, solve
from .monomial import (
    binom_le,
    enumerate_basis,
    evaluation_matrix,
    iter_rows_dfs,
    point_column,
    point_index,
)

__all__ = [
    "RMCode",
    "Syndrome",
    "ErasureWord",
    "encode",
    "unencode",
    "is_codeword",
    "syndrome",
    "syndrome_of_points",
    "erasure_correctable",
    "erasure_decode",
    "erasure_decode_parity",
    "moebius_transform",
]


def _log2_length(n: int) -> int:
    m = n.bit_length() - 1
    if n <= 0 or (1 << m) != n:
        raise DimensionError(f"word length {n} is not a power of two")
    return m


@dataclass(frozen=True)
class RMCode:
    """Reed-Muller code of ``m`` variables and degree bound ``r``."""

    m: int
    r: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be non-negative")
        if not 0 <= self.r <= self.m:
            raise ValueError(f"need 0 <= r <= m, got m={self.m}, r={self.r}")

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def k(self) -> int:
        return binom_le(self.m, self.r)

    @property
    def d(self) -> int:
        return 1 << (self.m - self.r)

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def dual_degree(self) -> int:
        """Degree of the evaluation matrix that checks this code (may be -1)."""
        return self.m - self.r - 1

    def generator_matrix(self) -> BitMatrix:
        return evaluation_matrix(self.m, self.r)

    def parity_check_matrix(self) -> BitMatrix:
        if self.dual_degree < 0:
            return BitMatrix([], self.n)
        return evaluation_matrix(self.m, self.dual_degree)

    def random_codeword(self, rng: np.random.Generator) -> BitVector:
        coeffs = BitVector.from_numpy(rng.integers(0, 2, size=self.k, dtype=np.uint8))
        return encode(self, coeffs)

    def __str__(self) -> str:
        return f"RM({self.m},{self.r})"


@dataclass(frozen=True)
class Syndrome:
    """Degree-``degree`` syndrome: one bit per monomial of degree <= degree."""

    m: int
    degree: int
    values: BitVector

    def __post_init__(self):
        expected = binom_le(self.m, self.degree)
        if self.values.length != expected:
            raise DimensionError(
                f"syndrome of degree {self.degree} over m={self.m} needs {expected} entries, "
                f"got {self.values.length}"
            )

    @property
    def basis(self):
        return enumerate_basis(self.m, self.degree)

    def __getitem__(self, mask: int) -> int:
        """Entry for the monomial with variable mask ``mask``."""
        return self.values[self.basis.index(mask)]

    def is_zero(self) -> bool:
        return self.values.bits == 0

    def __xor__(self, other: "Syndrome") -> "Syndrome":
        if (self.m, self.degree) != (other.m, other.degree):
            raise DimensionError("syndromes of different shape")
        return Syndrome(self.m, self.degree, self.values ^ other.values)


@dataclass(frozen=True)
class ErasureWord:
    """Word with some coordinates erased; ``known`` has 1 where a value is present."""

    known: BitVector
    values: BitVector

    def __post_init__(self):
        if self.known.length != self.values.length:
            raise DimensionError("known-mask and values differ in length")
        if self.values.bits & ~self.known.bits:
            raise ValueError("values must be 0 wherever the coordinate is erased")

    @classmethod
    def from_str(cls, text: str) -> "ErasureWord":
        text = text.strip()
        if set(text) - {"0", "1", "?"}:
            raise ValueError("erasure word may contain only '0', '1', '?'")
        known = BitVector.from_iterable(int(c != "?") for c in text)
        values = BitVector.from_iterable(int(c == "1") for c in text)
        return cls(known, values)

    @classmethod
    def erase(cls, word: BitVector, positions: Iterable[int]) -> "ErasureWord":
        erased = BitVector.from_support(word.length, positions)
        known = ~erased
        return cls(known, word & known)

    @property
    def n(self) -> int:
        return self.known.length

    @property
    def erased(self) -> list[int]:
        return (~self.known).support()

    def to_str(self) -> str:
        return "".join(
            "?" if not k else str(v) for k, v in zip(self.known, self.values)
        )


def moebius_transform(bits: np.ndarray) -> np.ndarray:
    """Subset-sum transform over GF(2) on a length-2^m array (an involution).

    Maps algebraic-normal-form coefficients (indexed by variable mask) to the
    evaluation vector (indexed by point) and back.
    """
    out = np.array(bits, dtype=np.uint8, copy=True)
    n = out.size
    m = _log2_length(n)
    for j in range(m):
        view = out.reshape(-1, 2, 1 << j)
        view[:, 1, :] ^= view[:, 0, :]
    return out


def encode(code: RMCode, coeffs: BitVector) -> BitVector:
    """Evaluate the polynomial with basis coefficients ``coeffs`` at every point."""
    if coeffs.length != code.k:
        raise DimensionError(f"{code} takes {code.k} coefficients, got {coeffs.length}")
    anf = np.zeros(code.n, dtype=np.uint8)
    masks = np.fromiter(enumerate_basis(code.m, code.r).masks, dtype=np.int64, count=code.k)
    anf[masks] = coeffs.to_numpy()
    return BitVector.from_numpy(moebius_transform(anf))


def unencode(code: RMCode, word: BitVector) -> BitVector:
    """Inverse of :func:`encode`; raises ``ValueError`` for non-codewords."""
    if word.length != code.n:
        raise DimensionError(f"{code} has length {code.n}, got {word.length}")
    anf = moebius_transform(word.to_numpy())
    masks = enumerate_basis(code.m, code.r).masks
    coeffs = anf[np.fromiter(masks, dtype=np.int64, count=len(masks))]
    if int(anf.sum()) != int(coeffs.sum()):
        raise ValueError(f"word is not a codeword of {code}")
    return BitVector.from_numpy(coeffs)


def syndrome(word: BitVector, s: int) -> Syndrome:
    """Degree-``s`` syndrome of ``word``: for each monomial, the parity of its
    values over the support of ``word``.

    Rows of the evaluation matrix are generated on the fly.
    """
    m = _log2_length(word.length)
    if not 0 <= s <= m:
        raise ValueError(f"syndrome degree {s} outside [0, {m}]")
    basis = enumerate_basis(m, s)
    w = word.bits
    bits = 0
    if w:
        index = basis.index_map
        for mask, row in iter_rows_dfs(m, s):
            if (w & row).bit_count() & 1:
                bits |= 1 << index[mask]
    return Syndrome(m, s, BitVector(len(basis), bits))


def syndrome_of_points(points: Iterable[int], s: int, m: int) -> Syndrome:
    """Degree-``s`` syndrome of a point set, as the XOR of its point columns."""
    acc = BitVector.zeros(binom_le(m, s))
    for u in points:
        acc = acc ^ point_column(u, s, m)
    return Syndrome(m, s, acc)


def is_codeword(code: RMCode, word: BitVector) -> bool:
    if word.length != code.n:
        raise DimensionError(f"{code} has length {code.n}, got {word.length}")
    if code.dual_degree < 0:
        return True
    return syndrome(word, code.dual_degree).is_zero()


def erasure_correctable(points: Iterable[int], r: int, m: int) -> bool:
    """Whether the degree-``r`` point columns of ``points`` are independent.

    Equivalently, erasing these coordinates in RM(m, m - r - 1) leaves a
    unique completion.
    """
    pts = [point_index(u, m) for u in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    if len(pts) > binom_le(m, r):
        return False
    return _rank_ints(point_column(u, r, m).bits for u in pts) == len(pts)


def erasure_decode_parity(parity_rows: Iterable[int], word: ErasureWord) -> BitVector:
    """Fill the erased coordinates so every parity row checks to zero.

    ``parity_rows`` are packed rows of length ``word.n``. Only the erased
    coordinates become unknowns.
    """
    unknown = word.erased
    n = word.n
    if not unknown:
        # Still report an inconsistent known part.
        for row in parity_rows:
            if (row & word.values.bits).bit_count() & 1:
                raise InconsistentErasures("received word violates a parity check")
        return word.values
    coeff_rows = []
    rhs = 0
    vals = word.values.bits
    for i, row in enumerate(parity_rows):
        restricted = 0
        for j, p in enumerate(unknown):
            if (row >> p) & 1:
                restricted |= 1 << j
        coeff_rows.append(restricted)
        if (row & vals).bit_count() & 1:
            rhs |= 1 << i
    A = BitMatrix(coeff_rows, len(unknown))
    x = solve(A, BitVector(len(coeff_rows), rhs))
    if x is None:
        raise InconsistentErasures("no codeword agrees with the known coordinates")
    if _rank_ints(coeff_rows) < len(unknown):
        raise AmbiguousErasures(
            f"{len(unknown)} erasures but only rank {_rank_ints(coeff_rows)} of checks on them"
        )
    filled = vals
    for j, p in enumerate(unknown):
        if x[j]:
            filled |= 1 << p
    return BitVector(n, filled)


def erasure_decode(code: RMCode, word: ErasureWord) -> BitVector:
    """Unique codeword of ``code`` agreeing with ``word`` on its known coordinates.

    Raises :class:`AmbiguousErasures` or :class:`InconsistentErasures`.
    """
    if word.n != code.n:
        raise DimensionError(f"{code} has length {code.n}, got {word.n}")
    if code.dual_degree < 0:
        rows: Sequence[int] = ()
    else:
        rows = [row for _, row in iter_rows_dfs(code.m, code.dual_degree)]
    return erasure_decode_parity(rows, word)

