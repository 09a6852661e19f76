"""Exception taxonomy shared across the package.

Every failure mode that callers are expected to handle programmatically gets
its own type; anything else is allowed to surface as a plain ValueError.
"""


class BfsyzError(Exception):
    """Base class for package-specific errors."""


class ResourceLimitError(BfsyzError):
    """A computation would exceed the configured memory budget.

    Raised *before* allocating, so callers can downgrade to a cheaper mode or
    report an inconclusive result instead of dying mid-way.
    """


class ConventionError(BfsyzError):
    """An internal structural invariant tied to a basis/sign convention failed.

    This signals a convention bug (or an input outside the validated range),
    never a numerical issue: all arithmetic is exact.
    """


class EquivarianceError(ConventionError):
    """A map that must be equivariant failed a proportionality/commutation check."""


class InconclusiveError(BfsyzError):
    """A verification could not be completed at the requested strength.

    Carries a human-readable reason; used by the CLI to exit with status 2.
    """
