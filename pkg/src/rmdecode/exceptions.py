"""Exception hierarchy shared by the decoders."""


class DimensionError(ValueError):
    """Operand shapes or lengths do not match."""


class DecodingFailure(Exception):
    """Base for decoders that could not produce a trustworthy codeword."""


class VerificationFailed(DecodingFailure):
    """The corrected word does not satisfy the parity checks."""


class AmbiguousErasures(DecodingFailure):
    """More than one codeword agrees with the known coordinates."""


class InconsistentErasures(DecodingFailure):
    """No codeword agrees with the known coordinates."""


class IndependenceViolation(AssertionError):
    """A trial with independent error columns failed to decode.

    This contradicts the decoder's guarantee, so it signals a bug rather
    than bad luck.
    """
