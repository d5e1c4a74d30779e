import numpy as np
import pytest

from rmdecode.exceptions import AmbiguousErasures, DimensionError, InconsistentErasures
from rmdecode.gf2 import BitMatrix, BitVector, rank
from rmdecode.monomial import enumerate_basis, evaluation_matrix, point_column
from rmdecode.rm import (
    ErasureWord,
    RMCode,
    encode,
    erasure_correctable,
    erasure_decode,
    is_codeword,
    moebius_transform,
    syndrome,
    syndrome_of_points,
    unencode,
)

from conftest import brute_monomial_value


def random_coeffs(code, rng):
    return BitVector.from_numpy(rng.integers(0, 2, size=code.k))


def brute_encode(code, coeffs):
    masks = enumerate_basis(code.m, code.r).masks
    out = []
    for u in range(code.n):
        out.append(sum(c * brute_monomial_value(mask, u) for c, mask in zip(coeffs, masks)) % 2)
    return BitVector.from_iterable(out)


class TestParams:
    @pytest.mark.parametrize("m,r,n,k,d", [(10, 2, 1024, 56, 256), (4, 0, 16, 1, 16), (5, 5, 32, 32, 1)])
    def test_values(self, m, r, n, k, d):
        code = RMCode(m, r)
        assert (code.n, code.k, code.d) == (n, k, d)
        assert code.rate == k / n

    @pytest.mark.parametrize("m,r", [(3, 4), (3, -1), (-1, 0)])
    def test_rejects(self, m, r):
        with pytest.raises(ValueError):
            RMCode(m, r)


class TestEncode:
    def test_zero(self):
        code = RMCode(4, 2)
        assert encode(code, BitVector.zeros(code.k)).weight() == 0

    def test_constant(self):
        code = RMCode(4, 2)
        assert encode(code, BitVector.from_support(code.k, [0])) == BitVector.ones(16)

    def test_x1(self):
        code = RMCode(2, 1)
        assert encode(code, BitVector.from_str("010")).to_str() == "0101"

    def test_matches_definition(self, rng):
        for m, r in [(3, 1), (4, 2), (5, 3), (6, 2)]:
            code = RMCode(m, r)
            for _ in range(10):
                c = random_coeffs(code, rng)
                assert encode(code, c) == brute_encode(code, c)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            encode(RMCode(3, 1), BitVector.zeros(3))

    def test_linear_and_injective(self, rng):
        code = RMCode(5, 2)
        for _ in range(20):
            a, b = random_coeffs(code, rng), random_coeffs(code, rng)
            assert encode(code, a ^ b) == encode(code, a) ^ encode(code, b)
            if a != b:
                assert encode(code, a) != encode(code, b)

    def test_unencode_roundtrip(self, rng):
        code = RMCode(7, 3)
        for _ in range(20):
            c = random_coeffs(code, rng)
            assert unencode(code, encode(code, c)) == c

    def test_unencode_rejects_noncodeword(self):
        code = RMCode(4, 1)
        with pytest.raises(ValueError):
            unencode(code, BitVector.from_support(16, [3]))

    def test_moebius_involution(self, rng):
        x = rng.integers(0, 2, size=64).astype(np.uint8)
        np.testing.assert_array_equal(moebius_transform(moebius_transform(x)), x)


class TestMembership:
    def test_weight_one_rejected(self):
        for m in range(1, 6):
            for r in range(m):
                assert not is_codeword(RMCode(m, r), BitVector.from_support(1 << m, [m % (1 << m)]))

    def test_zero_word(self):
        assert is_codeword(RMCode(5, 2), BitVector.zeros(32))

    def test_full_space(self):
        assert is_codeword(RMCode(3, 3), BitVector.from_str("10010110"))

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            is_codeword(RMCode(3, 1), BitVector.zeros(4))

    def test_duality_closure(self, rng):
        for m in range(1, 7):
            for r in range(m):
                code = RMCode(m, r)
                for _ in range(200 if m <= 4 else 40):
                    w = encode(code, random_coeffs(code, rng))
                    assert is_codeword(code, w)
                    assert syndrome(w, m - r - 1).is_zero()

    def test_generator_times_parity_is_zero(self):
        for m in range(1, 7):
            for r in range(m):
                G = evaluation_matrix(m, r)
                H = evaluation_matrix(m, m - r - 1)
                assert all(row == 0 for row in (G @ H.T).int_rows)


class TestSyndrome:
    def test_zero_word(self):
        assert syndrome(BitVector.zeros(32), 3).is_zero()

    def test_single_point(self):
        m, s = 5, 3
        for u in range(1 << m):
            w = BitVector.from_support(1 << m, [u])
            assert syndrome(w, s).values == point_column(u, s, m)

    def test_matches_matrix_product(self, rng):
        m, s = 6, 3
        E = evaluation_matrix(m, s)
        for _ in range(20):
            w = BitVector.from_numpy(rng.integers(0, 2, size=1 << m))
            assert syndrome(w, s).values == E @ w

    def test_linearity(self, rng):
        m, s = 6, 3
        for _ in range(100):
            x = BitVector.from_numpy(rng.integers(0, 2, size=1 << m))
            y = BitVector.from_numpy(rng.integers(0, 2, size=1 << m))
            assert syndrome(x ^ y, s) == syndrome(x, s) ^ syndrome(y, s)

    def test_point_set_path_agrees(self, rng):
        m, s = 6, 3
        for _ in range(20):
            pts = list(rng.choice(1 << m, size=7, replace=False))
            w = BitVector.from_support(1 << m, pts)
            assert syndrome(w, s) == syndrome_of_points(pts, s, m)

    def test_entry_lookup_by_mask(self):
        s = syndrome(BitVector.from_support(8, [0b101]), 2)
        assert s[0b101] == 1 and s[0b010] == 0

    def test_codewords_vanish_on_decoding_syndrome(self, rng):
        # Every basis codeword of RM(m, m-2r-2) has a zero (2r+1)-syndrome,
        # hence by linearity all codewords do.
        for m in range(2, 6):
            for r in range(0, (m - 2) // 2 + 1):
                code = RMCode(m, m - 2 * r - 2)
                for i in range(code.k):
                    w = encode(code, BitVector.from_support(code.k, [i]))
                    assert syndrome(w, 2 * r + 1).is_zero()
                for _ in range(20):
                    c = encode(code, random_coeffs(code, rng))
                    pts = rng.choice(code.n, size=int(rng.integers(0, code.n)), replace=False)
                    e = BitVector.from_support(code.n, pts)
                    assert syndrome(c ^ e, 2 * r + 1) == syndrome(e, 2 * r + 1)


class TestErasureCorrectable:
    def test_singleton(self):
        for u in range(16):
            assert erasure_correctable([u], 1, 4)

    def test_rank_bound(self):
        assert not erasure_correctable(range(5), 1, 3)

    def test_affine_basis(self):
        cols = [point_column(u, 1, 3) for u in (0b000, 0b001, 0b010, 0b100)]
        assert rank(BitMatrix.from_vectors(cols)) == 4
        assert erasure_correctable([0b000, 0b001, 0b010, 0b100], 1, 3)

    def test_dependent(self):
        # 000 + 011 + 101 + 110 = 0 with an even count: affinely dependent.
        assert not erasure_correctable([0b000, 0b011, 0b101, 0b110], 1, 3)


class TestErasureDecode:
    def test_no_erasures(self, rng):
        code = RMCode(5, 2)
        c = encode(code, random_coeffs(code, rng))
        assert erasure_decode(code, ErasureWord(BitVector.ones(32), c)) == c

    def test_ambiguous_on_codeword_support(self, rng):
        code = RMCode(4, 1)
        nonzero = encode(code, BitVector.from_str("01000"))  # x1: weight 8
        other = encode(code, random_coeffs(code, rng))
        with pytest.raises(AmbiguousErasures):
            erasure_decode(code, ErasureWord.erase(other, nonzero.support()))

    def test_inconsistent(self):
        code = RMCode(4, 1)
        w = ErasureWord.from_str("1" + "0" * 14 + "?")
        # Only codewords of weight 0, 8, 16 exist; a single 1 with one free
        # position cannot be completed.
        with pytest.raises(InconsistentErasures):
            erasure_decode(code, w)

    def test_single_erasure(self, rng):
        code = RMCode(5, 2)
        for _ in range(30):
            c = encode(code, random_coeffs(code, rng))
            i = int(rng.integers(code.n))
            assert erasure_decode(code, ErasureWord.erase(c, [i])) == c

    def test_str_roundtrip(self):
        w = ErasureWord.from_str("01?1?")
        assert w.to_str() == "01?1?"
        assert w.erased == [2, 4]

    def test_independent_patterns_recover(self, rng):
        for m in (5, 6, 8):
            for r in (1, 2):
                code = RMCode(m, m - r - 1)
                for _ in range(10):
                    t = int(rng.integers(1, code.n - code.k + 1))
                    pts = [int(p) for p in rng.choice(code.n, size=t, replace=False)]
                    c = encode(code, random_coeffs(code, rng))
                    word = ErasureWord.erase(c, pts)
                    if erasure_correctable(pts, r, m):
                        assert erasure_decode(code, word) == c
                    else:
                        with pytest.raises(AmbiguousErasures):
                            erasure_decode(code, word)
