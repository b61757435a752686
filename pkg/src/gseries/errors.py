"""Exception types shared across the toolkit."""


class GSeriesError(Exception):
    """Base class for all gseries errors."""


class LeadingExponentError(GSeriesError):
    """A q-exponent was produced that is not a multiple of 1/24."""


class ExponentMismatch(GSeriesError):
    """Two series cannot be aligned to a common coefficient grid."""


class DivisorNotUnit(GSeriesError):
    """Series division where the divisor's first stored coefficient is zero."""


class NotInSpan(GSeriesError):
    """Input series is not a combination of the F/theta basis at the working order."""


class NonPositiveInput(GSeriesError):
    """An operation required strictly positive input."""


class PoleAtNonPositiveInteger(GSeriesError):
    """Gamma evaluated at a pole."""


class NotInUpperHalfPlane(GSeriesError):
    """tau must satisfy Im(tau) > 0."""


class NotInUnitDisk(GSeriesError):
    """q must satisfy |q| < 1."""


class NotFundamental(GSeriesError):
    """D is not a fundamental discriminant."""


class NotInField(GSeriesError):
    """CM point coordinates are not over the requested quadratic field."""
