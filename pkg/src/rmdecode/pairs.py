"""Error-locating triples and decoding of arbitrary binary linear codes.

A triple ``(E, C, N)`` of codes of equal length with ``E * C`` inside ``N``
decodes errors in ``C``. It solves ``a * y = b`` for ``a`` in ``E`` and
``b`` in ``N``, takes the common zeros of the solution space's ``a``-parts
as the error locations, and then erasure-decodes them in ``C``.

:func:`build_tensor_triple` embeds any parity-check matrix into the columns
of the degree-1 evaluation matrix, which yields such a triple for the
extended code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exceptions import DimensionError
from .gf2 import BitMatrix, BitVector, _rank_ints, _rref, kernel_basis, rank, solve
from .monomial import enumerate_basis
from .rm import ErasureWord, RMCode, erasure_decode_parity

__all__ = [
    "LinearCode",
    "ErrorLocatingTriple",
    "TensorEmbedding",
    "check_star_closure",
    "abstract_decode",
    "locate",
    "locator_exists",
    "build_tensor_triple",
    "rm_triple",
    "embedded_evaluation_rows",
]


class LinearCode:
    """Binary linear code given by a generator with independent rows.

    The parity check is derived from the generator's kernel unless supplied.
    """

    def __init__(self, generator: BitMatrix, parity_check: BitMatrix | None = None):
        if rank(generator) != generator.nrows:
            raise ValueError("generator rows are linearly dependent")
        if parity_check is None:
            parity_check = BitMatrix.from_vectors(kernel_basis(generator), generator.ncols) \
                if generator.ncols else BitMatrix([], 0)
        elif parity_check.ncols != generator.ncols:
            raise DimensionError("generator and parity check differ in length")
        for h in parity_check.int_rows:
            for g in generator.int_rows:
                if (h & g).bit_count() & 1:
                    raise ValueError("parity check does not annihilate the generator")
        self.generator = generator
        self.parity_check = parity_check

    @classmethod
    def from_rows(cls, rows: Iterable[BitVector], n: int) -> "LinearCode":
        """Code spanned by ``rows`` (which may be dependent)."""
        ints = [v.bits for v in rows]
        reduced, pivots = _rref(ints, n)
        return cls(BitMatrix(reduced[: len(pivots)], n))

    @classmethod
    def from_parity_check(cls, H: BitMatrix) -> "LinearCode":
        return cls(BitMatrix.from_vectors(kernel_basis(H), H.ncols), parity_check=H)

    @classmethod
    def full(cls, n: int) -> "LinearCode":
        return cls(BitMatrix.identity(n), BitMatrix([], n))

    @classmethod
    def zero(cls, n: int) -> "LinearCode":
        return cls(BitMatrix([], n), BitMatrix.identity(n))

    @classmethod
    def reed_muller(cls, m: int, r: int) -> "LinearCode":
        code = RMCode(m, r)
        return cls(code.generator_matrix(), code.parity_check_matrix())

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def dimension(self) -> int:
        return self.generator.nrows

    def __repr__(self) -> str:
        return f"LinearCode(n={self.n}, k={self.dimension})"

    def contains(self, word: BitVector) -> bool:
        if word.length != self.n:
            raise DimensionError(f"code has length {self.n}, word has {word.length}")
        w = word.bits
        return not any((h & w).bit_count() & 1 for h in self.parity_check.int_rows)

    def encode(self, message: BitVector) -> BitVector:
        if message.length != self.dimension:
            raise DimensionError(f"message length {message.length} != dimension {self.dimension}")
        acc = 0
        for i, g in enumerate(self.generator.int_rows):
            if message[i]:
                acc ^= g
        return BitVector(self.n, acc)

    def erasure_correctable(self, positions: Iterable[int]) -> bool:
        """No nonzero codeword is supported inside ``positions``."""
        pos = list(positions)
        H = self.parity_check
        cols = [H.column(p).bits for p in pos]
        return _rank_ints(cols) == len(pos)

    def erasure_decode(self, word: ErasureWord) -> BitVector:
        if word.n != self.n:
            raise DimensionError(f"code has length {self.n}, word has {word.n}")
        return erasure_decode_parity(self.parity_check.int_rows, word)


def check_star_closure(E: LinearCode, C: LinearCode, N: LinearCode) -> bool:
    """Whether ``e * c`` lies in ``N`` for all basis pairs, hence for all pairs."""
    if not (E.n == C.n == N.n):
        raise DimensionError(f"lengths differ: {E.n}, {C.n}, {N.n}")
    checks = N.parity_check.int_rows
    for e in E.generator.int_rows:
        for c in C.generator.int_rows:
            prod = e & c
            if any((h & prod).bit_count() & 1 for h in checks):
                return False
    return True


@dataclass(frozen=True)
class ErrorLocatingTriple:
    """Codes ``E``, ``C``, ``N`` of a common length with ``E * C`` inside ``N``."""

    E: LinearCode
    C: LinearCode
    N: LinearCode
    _E_columns: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _N_columns: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not check_star_closure(self.E, self.C, self.N):
            raise ValueError("E * C is not contained in N")
        object.__setattr__(self, "_E_columns", self.E.generator.T.int_rows)
        object.__setattr__(self, "_N_columns", self.N.generator.T.int_rows)

    @property
    def n(self) -> int:
        return self.C.n


def rm_triple(m: int, r: int) -> ErrorLocatingTriple:
    """The Reed-Muller triple RM(m, r+1), RM(m, m-2r-2), RM(m, m-r-1)."""
    return ErrorLocatingTriple(
        LinearCode.reed_muller(m, r + 1),
        LinearCode.reed_muller(m, m - 2 * r - 2),
        LinearCode.reed_muller(m, m - r - 1),
    )


def _locator_basis(y: BitVector, triple: ErrorLocatingTriple) -> list[BitVector]:
    """Basis of the ``a``-parts of the solutions of ``a * y = b``."""
    if y.length != triple.n:
        raise DimensionError(f"triple has length {triple.n}, word has {y.length}")
    a_dim = triple.E.dimension
    b_dim = triple.N.dimension
    yb = y.bits
    # One equation per coordinate i; unknowns are E-coefficients then N-coefficients.
    rows = []
    for i, (e_col, n_col) in enumerate(zip(triple._E_columns, triple._N_columns)):
        rows.append((e_col if (yb >> i) & 1 else 0) | (n_col << a_dim))
    system = BitMatrix(rows, a_dim + b_dim)
    lam_mask = (1 << a_dim) - 1
    out = []
    for sol in kernel_basis(system):
        lam = sol.bits & lam_mask
        if lam:
            out.append(triple.E.encode(BitVector(a_dim, lam)))
    return out


def locate(y: BitVector, triple: ErrorLocatingTriple) -> list[int]:
    """Common zeros of every locator ``a`` solving ``a * y`` in ``N``."""
    seen = 0
    for a in _locator_basis(y, triple):
        seen |= a.bits
    return BitVector(triple.n, seen ^ ((1 << triple.n) - 1)).support()


def abstract_decode(y: BitVector, triple: ErrorLocatingTriple) -> BitVector:
    """Locate errors with ``E`` and ``N``, then erasure-decode them in ``C``.

    Raises :class:`~rmdecode.exceptions.AmbiguousErasures` or
    :class:`~rmdecode.exceptions.InconsistentErasures` when the erasure step
    has no unique answer.
    """
    errors = locate(y, triple)
    return triple.C.erasure_decode(ErasureWord.erase(y, errors))


def locator_exists(triple: ErrorLocatingTriple, support: Iterable[int], i: int) -> bool:
    """Whether some ``e`` in ``E`` vanishes on ``support`` with ``e[i] = 1``."""
    support = list(support)
    if i in support:
        raise ValueError("coordinate i must lie outside the support")
    cols = triple._E_columns
    rows = [cols[j] for j in support] + [cols[i]]
    rhs = BitVector.from_support(len(rows), [len(rows) - 1])
    return solve(BitMatrix(rows, triple.E.dimension), rhs) is not None


@dataclass(frozen=True)
class TensorEmbedding:
    """Embedding of a parity check ``H`` into the degree-1 evaluation matrix.

    ``H0`` is ``H`` extended by an overall parity bit (leading column), and
    column ``j`` of ``H0`` equals ``(1, v)`` for the point ``v = S[j]``.
    """

    H: BitMatrix
    H0: BitMatrix
    m: int
    S: tuple[int, ...]
    triple: ErrorLocatingTriple

    @property
    def n(self) -> int:
        return self.H0.ncols

    def decode(self, y: BitVector) -> BitVector:
        return abstract_decode(y, self.triple)


def _monomial_rows_on(points: Sequence[int], m: int, degree: int) -> list[int]:
    rows = []
    for mask in enumerate_basis(m, degree).masks:
        row = 0
        for j, u in enumerate(points):
            if u & mask == mask:
                row |= 1 << j
        rows.append(row)
    return rows


def build_tensor_triple(H: BitMatrix) -> TensorEmbedding:
    """Error-locating triple for the parity-extended code of ``H``.

    ``N`` is checked by ``H0``; ``C`` is checked by the degree-<=3 monomial
    rows restricted to the embedded points; ``E`` is spanned by the
    degree-<=2 monomial rows restricted to them.
    """
    m = H.nrows
    if rank(H) != m:
        raise ValueError("parity-check matrix must have full row rank")
    n0 = H.ncols + 1
    H0 = BitMatrix([(1 << n0) - 1] + [row << 1 for row in H.int_rows], n0)
    S = tuple([0] + [H.column(j).bits for j in range(H.ncols)])
    if len(set(S)) != len(S):
        raise ValueError("extended parity check has repeated columns; embedding is not injective")
    N = LinearCode.from_parity_check(H0)
    C = LinearCode.from_parity_check(BitMatrix(_monomial_rows_on(S, m, min(3, m)), n0))
    E = LinearCode.from_rows(
        [BitVector(n0, row) for row in _monomial_rows_on(S, m, min(2, m))], n0
    )
    return TensorEmbedding(H=H, H0=H0, m=m, S=S, triple=ErrorLocatingTriple(E, C, N))


def embedded_evaluation_rows(embedding: TensorEmbedding, degree: int) -> BitMatrix:
    """Rows of E(m, degree) restricted to the embedded points ``S``."""
    return BitMatrix(_monomial_rows_on(embedding.S, embedding.m, degree), embedding.n)

