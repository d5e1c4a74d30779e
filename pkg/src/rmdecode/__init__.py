"""Reed-Muller decoding from random errors via syndrome-driven linear systems."""

from .channel import (
    ErrorPattern,
    ExperimentConfig,
    TrialReport,
    TrialResult,
    apply,
    bec,
    bsc,
    random_error_pattern,
    run_experiment,
)
from .exceptions import (
    AmbiguousErasures,
    DecodingFailure,
    DimensionError,
    InconsistentErasures,
    IndependenceViolation,
    VerificationFailed,
)
from .gf2 import BitMatrix, BitVector, kernel_basis, rank, solve, star
from .monomial import Monomial, MonomialBasis, evaluation_matrix, point_column
from .pairs import (
    ErrorLocatingTriple,
    LinearCode,
    TensorEmbedding,
    abstract_decode,
    build_tensor_triple,
    rm_triple,
)
from .rm import (
    ErasureWord,
    RMCode,
    Syndrome,
    encode,
    erasure_correctable,
    erasure_decode,
    is_codeword,
    syndrome,
    unencode,
)
from .syndecode import DecoderParams, decode, locate_errors

__version__ = "0.1.0"

__all__ = [
    "AmbiguousErasures",
    "BitMatrix",
    "BitVector",
    "DecoderParams",
    "DecodingFailure",
    "DimensionError",
    "ErasureWord",
    "ErrorLocatingTriple",
    "ErrorPattern",
    "ExperimentConfig",
    "InconsistentErasures",
    "IndependenceViolation",
    "LinearCode",
    "Monomial",
    "MonomialBasis",
    "RMCode",
    "Syndrome",
    "TensorEmbedding",
    "TrialReport",
    "TrialResult",
    "VerificationFailed",
    "abstract_decode",
    "apply",
    "bec",
    "bsc",
    "build_tensor_triple",
    "decode",
    "encode",
    "erasure_correctable",
    "erasure_decode",
    "evaluation_matrix",
    "is_codeword",
    "kernel_basis",
    "locate_errors",
    "point_column",
    "random_error_pattern",
    "rank",
    "rm_triple",
    "run_experiment",
    "solve",
    "star",
    "syndrome",
    "unencode",
]
