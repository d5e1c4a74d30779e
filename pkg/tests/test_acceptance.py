"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``python3 tests/test_acceptance.py``.
"""

import itertools
import math
import sys
import time

import numpy as np
import pytest

from rmdecode.channel import ExperimentConfig, affine_independence_probability, run_experiment
from rmdecode.exceptions import DecodingFailure
from rmdecode.gf2 import BitMatrix, BitVector, rank
from rmdecode.monomial import binom_le
from rmdecode.pairs import abstract_decode, build_tensor_triple, rm_triple
from rmdecode.rm import RMCode, erasure_correctable, is_codeword, syndrome, syndrome_of_points
from rmdecode.syndecode import DecoderParams, decode, locate_errors


@pytest.fixture
def verdict(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {label}: {detail}")
        assert ok, f"{label}: {detail}"
    return emit


def sample_independent(rng, m, r, t):
    while True:
        pts = sorted(int(p) for p in rng.choice(1 << m, size=t, replace=False))
        if erasure_correctable(pts, r, m):
            return pts


def test_c1_deterministic_guarantee(verdict):
    rng = np.random.default_rng(101)
    configs = [(m, r) for m in (6, 8, 10) for r in (1, 2) if m - 2 * r - 2 >= 0]
    failures, trials = [], 0
    start = time.perf_counter()
    for m, r in configs:
        p = DecoderParams(m, r)
        t = binom_le(m, r) - 1
        for _ in range(200):
            c = p.code.random_codeword(rng)
            pts = sample_independent(rng, m, r, t)
            try:
                ok = decode(c.flip(pts), p) == c
            except DecodingFailure:
                ok = False
            trials += 1
            if not ok:
                failures.append((m, r, pts))
    elapsed = time.perf_counter() - start
    verdict("criterion 1", not failures and elapsed < 300,
            f"{len(failures)} failures in {trials} trials over {configs} at t = C(m,<=r)-1, {elapsed:.1f}s")


def test_c2_exhaustive_oracle_m4(verdict):
    m, r = 4, 1
    p = DecoderParams(m, r)
    start = time.perf_counter()
    # Oracle: every subset of weight <= 5 with independent columns, keyed by syndrome.
    oracle = {}
    for size in range(6):
        for sub in itertools.combinations(range(16), size):
            if erasure_correctable(sub, r, m):
                oracle.setdefault(syndrome_of_points(sub, 2 * r + 1, m), []).append(list(sub))
    mismatches = checked = 0
    for size in range(4):
        for pts in itertools.combinations(range(16), size):
            if not erasure_correctable(pts, r, m):
                continue
            alpha = syndrome_of_points(pts, 2 * r + 1, m)
            expected = oracle.get(alpha, [])
            checked += 1
            if len(expected) != 1 or locate_errors(alpha, p) != expected[0]:
                mismatches += 1
    elapsed = time.perf_counter() - start
    verdict("criterion 2", mismatches == 0 and elapsed < 60,
            f"{mismatches} mismatches over {checked} patterns, {elapsed:.1f}s")


@pytest.fixture(scope="module")
def c3_report():
    start = time.perf_counter()
    rep = run_experiment(ExperimentConfig(m=12, r=1, t=10, trials=500, seed=2024))
    return rep, time.perf_counter() - start


def test_c3a_independent_trials_decode(verdict, c3_report):
    rep, elapsed = c3_report
    bad = [x.trial for x in rep.results if x.independent and not x.success]
    verdict("criterion 3(a)", not bad and elapsed < 600,
            f"{len(bad)} independent trials failed out of {rep.independent_count}, {elapsed:.1f}s")


def test_c3b_independence_band(verdict, c3_report):
    rep, _ = c3_report
    frac = rep.independence_fraction
    exact = affine_independence_probability(12, 10)
    verdict("criterion 3(b)", 0.65 <= frac <= 0.85,
            f"independence fraction {frac:.3f}, band [0.65, 0.85]; exact probability for distinct "
            f"points is {exact:.4f}")


def test_c3c_success_dominates(verdict, c3_report):
    rep, _ = c3_report
    verdict("criterion 3(c)", rep.success_fraction >= rep.independence_fraction,
            f"success {rep.success_fraction:.3f} >= independence {rep.independence_fraction:.3f}")


def test_c4_abstract_matches_concrete(verdict):
    rng = np.random.default_rng(404)
    m, r = 8, 1
    p = DecoderParams(m, r)
    triple = rm_triple(m, r)
    assert (triple.E.dimension, triple.C.dimension, triple.N.dimension) == (
        binom_le(8, 2), binom_le(8, 4), binom_le(8, 6))
    start = time.perf_counter()
    differ = failed = 0
    for _ in range(100):
        c = p.code.random_codeword(rng)
        t = int(rng.integers(0, 2 * p.num_unknowns))
        y = c.flip([int(x) for x in rng.choice(p.n, size=t, replace=False)])
        try:
            concrete = decode(y, p)
        except DecodingFailure:
            concrete = None
        try:
            abstract = abstract_decode(y, triple)
        except DecodingFailure:
            abstract = None
        # A failure counts as an output, so both must fail together.
        failed += concrete is None
        differ += concrete != abstract
    elapsed = time.perf_counter() - start
    verdict("criterion 4", differ == 0 and elapsed < 300,
            f"{differ} differing outputs in 100 instances ({failed} failed in both), {elapsed:.1f}s")


def test_c5_general_linear_code(verdict):
    start = time.perf_counter()
    H = BitMatrix([sum(((c >> i) & 1) << (c - 1) for c in range(1, 16)) for i in range(4)], 15)
    emb = build_tensor_triple(H)
    n = emb.n
    cols = [emb.H0.column(j) for j in range(n)]
    dependent_triples = sum(
        rank(BitMatrix.from_vectors([cols[a], cols[b], cols[c]])) != 3
        for a, b, c in itertools.combinations(range(n), 3)
    )
    C = emb.triple.C
    codewords = [C.encode(BitVector(C.dimension, x)) for x in range(1 << C.dimension)]
    failures = patterns = 0
    for size in range(4):
        for pts in itertools.combinations(range(n), size):
            patterns += 1
            for c in codewords:
                try:
                    ok = emb.decode(c.flip(pts)) == c
                except DecodingFailure:
                    ok = False
                failures += not ok
    elapsed = time.perf_counter() - start
    verdict("criterion 5", dependent_triples == 0 and failures == 0 and elapsed < 120,
            f"{dependent_triples} dependent column triples of {math.comb(n, 3)}; "
            f"{failures} failures over {patterns} patterns x {len(codewords)} codewords, {elapsed:.1f}s")


def test_c6_duality_and_syndrome(verdict):
    rng = np.random.default_rng(606)
    bad_codewords = 0
    for m in range(0, 7):
        for r in range(0, m + 1):
            code = RMCode(m, r)
            for _ in range(20):
                c = code.random_codeword(rng)
                if not is_codeword(code, c):
                    bad_codewords += 1
                if r < m and not syndrome(c, m - r - 1).is_zero():
                    bad_codewords += 1
    bad_linear = 0
    for _ in range(1000):
        m = int(rng.integers(1, 7))
        s = int(rng.integers(0, m + 1))
        a = BitVector.from_numpy(rng.integers(0, 2, size=1 << m))
        b = BitVector.from_numpy(rng.integers(0, 2, size=1 << m))
        if syndrome(a ^ b, s) != syndrome(a, s) ^ syndrome(b, s):
            bad_linear += 1
    verdict("criterion 6", bad_codewords == 0 and bad_linear == 0,
            f"{bad_codewords} duality failures, {bad_linear} linearity failures in 1000 pairs")


def test_c7_runtime_shape(verdict):
    rng = np.random.default_rng(707)

    def best_time(m, repeats=7):
        p = DecoderParams(m, 1)
        c = p.code.random_codeword(rng)
        y = c.flip(sample_independent(rng, m, 1, p.num_unknowns - 1))
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            assert decode(y, p) == c
            best = min(best, time.perf_counter() - t0)
        return best

    t11, t12 = best_time(11), best_time(12)
    ratio = t12 / t11
    verdict("criterion 7", t12 < 10 and 1.5 <= ratio <= 6,
            f"decode at m=12 took {t12:.3f}s, m=11 {t11:.3f}s, ratio {ratio:.2f} (band [1.5, 6])")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
