"""scikit-learn style wrappers around the decoders.

Rows of an input array are received words, one coordinate per column, with
entries in {0, 1}. ``transform`` returns the decoded codewords and
``predict`` returns the located error masks.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .exceptions import DecodingFailure
from .gf2 import BitMatrix, BitVector
from .pairs import build_tensor_triple
from .syndecode import DecoderParams, decode

__all__ = ["RMSyndromeDecoder", "TensorCodeDecoder", "check_binary_array"]

_FAILURE_POLICIES = ("raise", "keep")


def check_binary_array(X, n_features: int | None = None, name: str = "X") -> np.ndarray:
    """Validate a 2-D array of 0/1 entries and return it as ``uint8``."""
    arr = check_array(X, dtype=None, ensure_2d=True, ensure_all_finite=True)
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} must contain only 0 and 1")
    if n_features is not None and arr.shape[1] != n_features:
        raise ValueError(f"{name} has {arr.shape[1]} columns, expected {n_features}")
    return arr.astype(np.uint8)


def _check_policy(policy: str) -> None:
    if policy not in _FAILURE_POLICIES:
        raise ValueError(f"on_failure must be one of {_FAILURE_POLICIES}, got {policy!r}")


class _DecoderMixin:
    def _decode_row(self, y: BitVector) -> BitVector:
        raise NotImplementedError

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_in_")
        X = check_binary_array(X, self.n_features_in_)
        out = np.empty_like(X)
        for i, row in enumerate(X):
            y = BitVector.from_numpy(row)
            try:
                out[i] = self._decode_row(y).to_numpy()
            except DecodingFailure:
                if self.on_failure == "raise":
                    raise
                out[i] = row
        return out

    def predict(self, X) -> np.ndarray:
        """Error indicator for every row (zero rows where decoding was kept)."""
        X = check_binary_array(X)
        return X ^ self.transform(X)

    def score(self, X, y) -> float:
        """Fraction of rows decoded to exactly the corresponding row of ``y``."""
        y = check_binary_array(y, self.n_features_in_, name="y")
        decoded = self.transform(X)
        if decoded.shape != y.shape:
            raise ValueError("X and y have different shapes")
        return float(np.mean(np.all(decoded == y, axis=1)))


class RMSyndromeDecoder(_DecoderMixin, TransformerMixin, BaseEstimator):
    """Random-error decoder for RM(m, m-2r-2).

    Parameters
    ----------
    m, r : int
        Number of variables and decoder radius.
    method : {"batched", "scan"}
    threads : int
    on_failure : {"raise", "keep"}
        ``"keep"`` returns the received row when decoding fails.
    """

    def __init__(self, m: int = 8, r: int = 1, method: str = "batched", threads: int = 1,
                 on_failure: str = "raise"):
        self.m = m
        self.r = r
        self.method = method
        self.threads = threads
        self.on_failure = on_failure

    def fit(self, X=None, y=None):
        _check_policy(self.on_failure)
        if self.method not in ("batched", "scan"):
            raise ValueError(f"unknown method {self.method!r}")
        self.params_ = DecoderParams(self.m, self.r)
        self.code_ = self.params_.code
        self.n_features_in_ = self.params_.n
        if X is not None:
            check_binary_array(X, self.n_features_in_)
        return self

    def _decode_row(self, y):
        return decode(y, self.params_, method=self.method, threads=self.threads)


class TensorCodeDecoder(_DecoderMixin, TransformerMixin, BaseEstimator):
    """Decoder for the tensor-embedded code of a parity-check matrix.

    ``fit`` takes the parity check ``H``; rows passed to ``transform`` have
    ``H.shape[1] + 1`` coordinates, the first being the added parity bit.
    """

    def __init__(self, on_failure: str = "raise"):
        self.on_failure = on_failure

    def fit(self, H, y=None):
        _check_policy(self.on_failure)
        H = check_binary_array(H, name="H")
        self.embedding_ = build_tensor_triple(BitMatrix.from_numpy(H))
        self.n_features_in_ = self.embedding_.n
        return self

    def _decode_row(self, y):
        return self.embedding_.decode(y)
