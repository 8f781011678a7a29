"""Exception types shared across the library."""


class FueterError(Exception):
    """Base class for all library-specific errors."""


class ZeroDivisor(FueterError):
    """Inversion of a quaternion whose squared norm is below the zero floor."""


class OutOfDomain(FueterError):
    """Evaluation (or a finite-difference stencil) left the function's domain."""


class BadResolution(FueterError):
    """Quadrature grid resolution below the supported minimum."""


class PointOnOrOutsideSphere(FueterError):
    """Reproduction point is not strictly inside the integration sphere."""


class EvaluationFailure(FueterError):
    """A function evaluation returned non-finite values."""


class OrderTooHigh(FueterError):
    """Requested derivative/series order exceeds the configured cap."""


class InsufficientOrder(FueterError):
    """Series truncation order too low for the requested shell statistics."""


class OutsideConvergenceRegion(FueterError):
    """Kernel series evaluated outside its absolute-convergence region."""


class OutsideGamma(FueterError):
    """Complexified point fails the denominator floor on the integration sphere."""


class UnknownName(FueterError):
    """Unknown reference-function name."""


class RadiusNotCertified(FueterError):
    """Measured convergence radius does not cover the requested extension cube."""


class DomainViolation(FueterError):
    """A guarded function was queried outside its allowed region."""


class NoFeasibleEpsilon(FueterError):
    """No representable strip half-width satisfies the certificate inequality."""


class BadSpec(FueterError):
    """Malformed function/domain specification (CLI input error)."""
