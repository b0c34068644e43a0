"""Exception hierarchy shared by all quadpart modules.

The CLI maps each branch to a stable exit code: input errors exit 1,
verification failures exit 2, resource limits exit 3.
"""


class QuadpartError(Exception):
    """Base class for all errors raised by this package."""


class InputError(QuadpartError, ValueError):
    """Malformed or infeasible input (bad vector, bad file, bad parameters)."""


class DimensionMismatchError(InputError):
    """Vectors of different dimensions were combined."""


class VerificationError(QuadpartError):
    """A claimed solution or matching failed an exact check."""


class OptimalityViolationError(VerificationError):
    """A forced matching is a perfect matching but not of optimal cost.

    This signals a bad reproduction script rather than a solver bug.
    """


class ResourceLimitError(QuadpartError):
    """A solver refused to continue past its configured size or node budget."""
