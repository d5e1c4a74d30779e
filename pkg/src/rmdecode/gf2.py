"""Exact linear algebra over GF(2) on bit-packed vectors and matrices.

Vectors and matrix rows are stored as Python integers where bit ``i`` is
coordinate ``i``. Arbitrary-precision integers act as the packed word
array, so XOR/AND of whole rows is a single operation regardless of width.

Elimination always picks pivots leftmost column first, topmost row first,
which makes :func:`solve` and :func:`kernel_basis` deterministic.
"""

from __future__ import annotations

import operator
from typing import Iterable, Iterator, Sequence

import numpy as np

from .exceptions import DimensionError

__all__ = [
    "BitVector",
    "BitMatrix",
    "rank",
    "row_reduce",
    "solve",
    "kernel_basis",
    "is_consistent",
    "star",
    "span_basis",
    "int_to_bits",
    "bits_to_int",
    "matmul_mod2",
]


def int_to_bits(x: int, n: int) -> np.ndarray:
    """Unpack the low ``n`` bits of ``x`` into a uint8 array."""
    nbytes = max(1, (n + 7) // 8)
    raw = np.frombuffer(x.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].copy()


def bits_to_int(bits) -> int:
    """Pack a 0/1 array-like (coordinate ``i`` -> bit ``i``) into an integer."""
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size == 0:
        return 0
    if np.any(arr > 1):
        raise ValueError("entries must be 0 or 1")
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def matmul_mod2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Dense 0/1 matrix product reduced mod 2.

    Goes through float64 BLAS; exact while the inner dimension stays below
    2**53, far beyond anything this package builds.
    """
    prod = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


class BitVector:
    """Immutable fixed-length vector over GF(2)."""

    __slots__ = ("_n", "_bits")

    def __init__(self, length: int, bits: int = 0):
        if length < 0:
            raise ValueError("length must be non-negative")
        if bits < 0 or bits >> length:
            raise ValueError(f"bits set beyond length {length}")
        self._n = length
        self._bits = bits

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, (1 << length) - 1)

    @classmethod
    def from_iterable(cls, values: Iterable[int]) -> "BitVector":
        values = list(values)
        return cls(len(values), bits_to_int(values) if values else 0)

    @classmethod
    def from_support(cls, length: int, positions: Iterable[int]) -> "BitVector":
        bits = 0
        for p in positions:
            p = operator.index(p)
            if not 0 <= p < length:
                raise IndexError(f"position {p} out of range for length {length}")
            bits |= 1 << p
        return cls(length, bits)

    @classmethod
    def from_str(cls, text: str) -> "BitVector":
        text = text.strip()
        if set(text) - {"0", "1"}:
            raise ValueError("bit string may contain only '0' and '1'")
        # Character i is coordinate i, so reverse before int() parsing.
        return cls(len(text), int(text[::-1], 2) if text else 0)

    @classmethod
    def from_numpy(cls, arr) -> "BitVector":
        arr = np.asarray(arr).ravel()
        return cls(arr.size, bits_to_int(arr))

    @property
    def length(self) -> int:
        return self._n

    @property
    def bits(self) -> int:
        return self._bits

    def __len__(self) -> int:
        return self._n

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self._n
        if not 0 <= i < self._n:
            raise IndexError(i)
        return (self._bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        b = self._bits
        for i in range(self._n):
            yield (b >> i) & 1

    def _check(self, other: "BitVector") -> None:
        if not isinstance(other, BitVector):
            raise TypeError(f"expected BitVector, got {type(other).__name__}")
        if other._n != self._n:
            raise DimensionError(f"length mismatch: {self._n} vs {other._n}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self._n, self._bits ^ other._bits)

    __add__ = __xor__

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self._n, self._bits & other._bits)

    def __or__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self._n, self._bits | other._bits)

    def __invert__(self) -> "BitVector":
        return BitVector(self._n, self._bits ^ ((1 << self._n) - 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._n == other._n and self._bits == other._bits

    def __hash__(self) -> int:
        return hash((self._n, self._bits))

    def __repr__(self) -> str:
        if self._n <= 64:
            return f"BitVector('{self.to_str()}')"
        return f"BitVector(length={self._n}, weight={self.weight()})"

    def dot(self, other: "BitVector") -> int:
        """Inner product over GF(2)."""
        self._check(other)
        return (self._bits & other._bits).bit_count() & 1

    def weight(self) -> int:
        return self._bits.bit_count()

    def support(self) -> list[int]:
        out = []
        b = self._bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def flip(self, positions: Iterable[int]) -> "BitVector":
        return self ^ BitVector.from_support(self._n, positions)

    def restrict(self, positions: Sequence[int]) -> "BitVector":
        """Sub-vector at ``positions`` (in the given order)."""
        b = self._bits
        out = 0
        for j, p in enumerate(positions):
            if (b >> p) & 1:
                out |= 1 << j
        return BitVector(len(positions), out)

    def to_str(self) -> str:
        if self._n == 0:
            return ""
        return format(self._bits, f"0{self._n}b")[::-1]

    def to_numpy(self) -> np.ndarray:
        return int_to_bits(self._bits, self._n)

    def to_list(self) -> list[int]:
        return list(self)


def star(u: BitVector, v: BitVector) -> BitVector:
    """Coordinatewise product ``u * v``."""
    return u & v


class BitMatrix:
    """Immutable GF(2) matrix stored as packed rows."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Sequence[int], ncols: int):
        rows = tuple(int(r) for r in rows)
        for r in rows:
            if r < 0 or r >> ncols:
                raise ValueError(f"row has bits beyond column count {ncols}")
        self._rows = rows
        self._ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls([0] * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            if not vectors:
                raise ValueError("ncols required for an empty row list")
            ncols = vectors[0].length
        for v in vectors:
            if v.length != ncols:
                raise DimensionError("rows have unequal lengths")
        return cls([v.bits for v in vectors], ncols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        return cls.from_vectors([BitVector.from_iterable(r) for r in rows])

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        return cls.from_vectors([BitVector.from_str(r) for r in rows])

    @classmethod
    def from_numpy(cls, arr) -> "BitMatrix":
        arr = np.atleast_2d(np.asarray(arr))
        if arr.ndim != 2:
            raise DimensionError("expected a 2-d array")
        return cls([bits_to_int(row) for row in arr], arr.shape[1])

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._ncols)

    @property
    def int_rows(self) -> tuple[int, ...]:
        return self._rows

    def row(self, i: int) -> BitVector:
        return BitVector(self._ncols, self._rows[i])

    def rows(self) -> list[BitVector]:
        return [BitVector(self._ncols, r) for r in self._rows]

    def column(self, j: int) -> BitVector:
        if not 0 <= j < self._ncols:
            raise IndexError(j)
        bits = 0
        for i, r in enumerate(self._rows):
            if (r >> j) & 1:
                bits |= 1 << i
        return BitVector(len(self._rows), bits)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return (self._rows[i] >> j) & 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._ncols, self._rows))

    def __repr__(self) -> str:
        return f"BitMatrix(shape={self.shape})"

    def transpose(self) -> "BitMatrix":
        return BitMatrix([self.column(j).bits for j in range(self._ncols)], len(self._rows))

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def matvec(self, x: BitVector) -> BitVector:
        if x.length != self._ncols:
            raise DimensionError(f"vector length {x.length} != column count {self._ncols}")
        xb = x.bits
        bits = 0
        for i, r in enumerate(self._rows):
            if (r & xb).bit_count() & 1:
                bits |= 1 << i
        return BitVector(len(self._rows), bits)

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return self.matvec(other)
        if isinstance(other, BitMatrix):
            if other.nrows != self._ncols:
                raise DimensionError(f"inner dimensions differ: {self._ncols} vs {other.nrows}")
            orows = other._rows
            out = []
            for r in self._rows:
                acc = 0
                while r:
                    low = r & -r
                    acc ^= orows[low.bit_length() - 1]
                    r ^= low
                out.append(acc)
            return BitMatrix(out, other._ncols)
        return NotImplemented

    def select_columns(self, columns: Sequence[int]) -> "BitMatrix":
        return BitMatrix(
            [BitVector(self._ncols, r).restrict(columns).bits for r in self._rows],
            len(columns),
        )

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other._ncols != self._ncols:
            raise DimensionError("column counts differ")
        return BitMatrix(self._rows + other._rows, self._ncols)

    def to_numpy(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self._rows):
            out[i] = int_to_bits(r, self._ncols)
        return out

    def to_strings(self) -> list[str]:
        return [self.row(i).to_str() for i in range(self.nrows)]


def _rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over the first ``ncols`` bit positions.

    Bits at positions >= ncols ride along (augmented columns). Returns the
    reduced rows (pivot rows first, in pivot order) and the pivot columns.
    """
    work = list(rows)
    pivots: list[int] = []
    top = 0
    nrows = len(work)
    for col in range(ncols):
        if top == nrows:
            break
        bit = 1 << col
        piv = -1
        for i in range(top, nrows):
            if work[i] & bit:
                piv = i
                break
        if piv < 0:
            continue
        work[top], work[piv] = work[piv], work[top]
        prow = work[top]
        for i in range(nrows):
            if i != top and work[i] & bit:
                work[i] ^= prow
        pivots.append(col)
        top += 1
    return work, pivots


def row_reduce(M: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Return the reduced row echelon form of ``M`` and its pivot columns."""
    rows, pivots = _rref(list(M.int_rows), M.ncols)
    return BitMatrix(rows, M.ncols), pivots


def rank(M: BitMatrix) -> int:
    """Row rank of ``M`` over GF(2)."""
    return _rank_ints(M.int_rows)


def _rank_ints(rows: Iterable[int]) -> int:
    # Insertion into a basis keyed by leading bit; cheaper than full RREF.
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            h = v.bit_length() - 1
            b = basis.get(h)
            if b is None:
                basis[h] = v
                break
            v ^= b
    return len(basis)


def span_basis(vectors: Sequence[BitVector]) -> list[BitVector]:
    """Reduced basis of the span of ``vectors`` (rows of the RREF)."""
    if not vectors:
        return []
    n = vectors[0].length
    rows, pivots = _rref([v.bits for v in vectors], n)
    return [BitVector(n, rows[i]) for i in range(len(pivots))]


def solve(A: BitMatrix, b: BitVector) -> BitVector | None:
    """Some ``x`` with ``A @ x == b``, or ``None`` when the system is inconsistent.

    Free variables are set to zero, so among all solutions the one returned
    is fixed by the pivot order.
    """
    if b.length != A.nrows:
        raise DimensionError(f"right-hand side length {b.length} != row count {A.nrows}")
    n = A.ncols
    aug_bit = 1 << n
    rows = [r | (aug_bit if (b.bits >> i) & 1 else 0) for i, r in enumerate(A.int_rows)]
    rows, pivots = _rref(rows, n)
    for r in rows[len(pivots):]:
        if r == aug_bit:
            return None
    x = 0
    for i, col in enumerate(pivots):
        if rows[i] & aug_bit:
            x |= 1 << col
    return BitVector(n, x)


def is_consistent(A: BitMatrix, b: BitVector) -> bool:
    """Whether ``A @ x == b`` has a solution."""
    return solve(A, b) is not None


def kernel_basis(A: BitMatrix) -> list[BitVector]:
    """Basis of ``{x : A @ x == 0}``; one vector per free column."""
    n = A.ncols
    rows, pivots = _rref(list(A.int_rows), n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        fbit = 1 << free
        x = fbit
        for i, col in enumerate(pivots):
            if rows[i] & fbit:
                x |= 1 << col
        basis.append(BitVector(n, x))
    return basis
