"""Seeded corruption models and the Monte-Carlo decoding harness.

Every random draw comes from a Philox counter-based generator keyed by
``SeedSequence([master_seed, trial_index])``, so a trial's outcome depends
only on the master seed and its index, never on scheduling or thread count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Union

import numpy as np

from .exceptions import DecodingFailure, DimensionError, IndependenceViolation
from .gf2 import BitVector
from .monomial import binom_le
from .rm import ErasureWord, erasure_correctable, erasure_decode
from .syndecode import DecoderParams, decode

__all__ = [
    "ErrorPattern",
    "ExperimentConfig",
    "TrialResult",
    "TrialReport",
    "trial_rng",
    "random_error_pattern",
    "apply",
    "bsc",
    "bec",
    "run_experiment",
    "capacity_weight_bound",
    "affine_independence_probability",
]

Seed = Union[int, np.random.Generator]
MODES = ("fixed", "bsc", "bec")


def trial_rng(seed: int, index: int | None = None) -> np.random.Generator:
    """Generator for trial ``index`` under master ``seed``."""
    if seed < 0:
        raise ValueError("seeds must be non-negative")
    entropy = [seed] if index is None else [seed, index]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def _as_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return trial_rng(int(seed))


@dataclass(frozen=True)
class ErrorPattern:
    """Set of corrupted coordinates, as an indicator vector."""

    support: BitVector

    @property
    def n(self) -> int:
        return self.support.length

    @property
    def weight(self) -> int:
        return self.support.weight()

    @property
    def positions(self) -> list[int]:
        return self.support.support()


def random_error_pattern(n: int, t: int, seed: Seed) -> ErrorPattern:
    """Uniformly random ``t``-subset of ``range(n)``."""
    if not 0 <= t <= n:
        raise ValueError(f"cannot choose {t} positions out of {n}")
    rng = _as_rng(seed)
    positions = rng.choice(n, size=t, replace=False) if t else []
    return ErrorPattern(BitVector.from_support(n, positions))


def apply(pattern: ErrorPattern, word: BitVector) -> BitVector:
    if pattern.n != word.length:
        raise DimensionError(f"pattern length {pattern.n} != word length {word.length}")
    return word ^ pattern.support


def _bernoulli_support(n: int, p: float, rng: np.random.Generator) -> BitVector:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    return BitVector.from_numpy((rng.random(n) < p).astype(np.uint8))


def bsc(word: BitVector, p: float, seed: Seed) -> tuple[BitVector, ErrorPattern]:
    """Flip each bit independently with probability ``p``."""
    pattern = ErrorPattern(_bernoulli_support(word.length, p, _as_rng(seed)))
    return apply(pattern, word), pattern


def bec(word: BitVector, p: float, seed: Seed) -> tuple[ErasureWord, ErrorPattern]:
    """Erase each bit independently with probability ``p``."""
    pattern = ErrorPattern(_bernoulli_support(word.length, p, _as_rng(seed)))
    return ErasureWord.erase(word, pattern.positions), pattern


def _binom_real(x: float, i: int) -> float:
    out = 1.0
    for j in range(i):
        out *= (x - j) / (j + 1)
    return out


def capacity_weight_bound(m: int, r: int, epsilon: float) -> int:
    """Largest ``t`` strictly below ``C(m - log2 C(m,<=r) - log2(1/eps), <=r)``.

    Uniform ``t``-sets under this bound have independent columns with
    probability at least ``1 - epsilon``. The top argument is generally
    fractional, so the generalized binomial is used; a negative one gives 0.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    x = m - math.log2(binom_le(m, r)) - math.log2(1.0 / epsilon)
    if x < 0:
        return 0
    total = sum(_binom_real(x, i) for i in range(r + 1))
    return max(0, math.ceil(total) - 1)


def affine_independence_probability(m: int, t: int) -> float:
    """Probability that ``t`` distinct uniform points of F_2^m have
    independent degree-1 columns ``(1, u)``.

    Point ``i`` (1-based) must avoid the ``2^(i-2)`` points of the affine span
    of the earlier ones, of which ``i - 1`` are already excluded.
    """
    n = 1 << m
    if t > m + 1:
        return 0.0
    prob = 1.0
    for i in range(2, t + 1):
        bad = (1 << (i - 2)) - (i - 1)
        prob *= 1.0 - bad / (n - (i - 1))
    return prob


@dataclass(frozen=True)
class ExperimentConfig:
    m: int
    r: int
    seed: int
    t: int | None = None
    trials: int = 100
    mode: str = "fixed"
    p: float | None = None
    epsilon: float = 0.1
    method: str = "batched"
    threads: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.mode == "fixed":
            if self.t is None or not 0 <= self.t <= (1 << self.m):
                raise ValueError("fixed-weight mode needs 0 <= t <= 2^m")
        elif self.p is None or not 0.0 <= self.p <= 1.0:
            raise ValueError(f"{self.mode} mode needs 0 <= p <= 1")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        DecoderParams(self.m, self.r)

    @property
    def params(self) -> DecoderParams:
        return DecoderParams(self.m, self.r)


@dataclass(frozen=True)
class TrialResult:
    trial: int
    weight: int
    independent: bool
    success: bool
    micros: int


@dataclass
class TrialReport:
    config: ExperimentConfig
    results: list[TrialResult] = field(default_factory=list)

    @property
    def trials(self) -> int:
        return len(self.results)

    @property
    def successes(self) -> int:
        return sum(r.success for r in self.results)

    @property
    def independent_count(self) -> int:
        return sum(r.independent for r in self.results)

    @property
    def success_fraction(self) -> float:
        return self.successes / self.trials

    @property
    def independence_fraction(self) -> float:
        return self.independent_count / self.trials

    @property
    def weight_bound(self) -> int:
        return capacity_weight_bound(self.config.m, self.config.r, self.config.epsilon)

    def summary(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "independent": self.independent_count,
            "success_fraction": self.success_fraction,
            "independence_fraction": self.independence_fraction,
            "weight_bound": self.weight_bound,
        }

    def to_dict(self, timing: bool = True) -> dict:
        rows = []
        for r in self.results:
            row = asdict(r)
            if not timing:
                row["micros"] = None
            rows.append(row)
        return {"config": asdict(self.config), "summary": self.summary(), "trials": rows}


def _run_trial(config: ExperimentConfig, index: int) -> TrialResult:
    params = config.params
    code = params.code
    rng = trial_rng(config.seed, index)
    codeword = code.random_codeword(rng)
    start = time.perf_counter_ns()
    if config.mode == "bec":
        received, pattern = bec(codeword, config.p, rng)
        try:
            success = erasure_decode(code, received) == codeword
        except DecodingFailure:
            success = False
    else:
        if config.mode == "fixed":
            pattern = random_error_pattern(params.n, config.t, rng)
            received = apply(pattern, codeword)
        else:
            received, pattern = bsc(codeword, config.p, rng)
        try:
            success = decode(received, params, method=config.method) == codeword
        except DecodingFailure:
            success = False
    micros = (time.perf_counter_ns() - start) // 1000
    independent = erasure_correctable(pattern.positions, config.r, config.m)
    if independent and not success:
        raise IndependenceViolation(
            f"trial {index} (seed {config.seed}): independent pattern {pattern.positions} "
            f"was not decoded in {code}"
        )
    return TrialResult(index, pattern.weight, independent, success, int(micros))


def run_experiment(config: ExperimentConfig) -> TrialReport:
    """Run ``config.trials`` independent trials and collect their outcomes.

    Raises :class:`IndependenceViolation` if a pattern with independent
    columns is not decoded.
    """
    indices = range(config.trials)
    if config.threads == 1:
        results = [_run_trial(config, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(lambda i: _run_trial(config, i), indices))
    return TrialReport(config, results)
