"""Exception types shared across the package."""


class CertifyError(Exception):
    """Base class for all package errors."""


class DomainStraddle(CertifyError):
    """A ball argument touches a point where the operation is undefined."""


class PrecisionOverflow(CertifyError):
    """Requested working precision exceeds the configured cap."""


class DomainError(CertifyError):
    """An exact argument lies outside the definitional domain."""


class PoleError(CertifyError):
    """A rational expression was evaluated at one of its poles."""


class HypothesisError(CertifyError):
    """Inputs violate the hypotheses of the inequality being checked."""


class RangeError(CertifyError):
    """A lookup table does not cover the requested index."""
