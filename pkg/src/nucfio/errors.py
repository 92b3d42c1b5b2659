"""Exception types shared across the package.

Validation problems (bad shapes, grids, parameter domains, config files) are
ValueErrors; numeric failures discovered at run time (non-convergence,
tolerance breaches) are RuntimeErrors. The CLI maps the former to exit code 2
and the latter to exit code 3.
"""


class ValidationError(ValueError):
    """Input rejected before any numerics ran."""


class ShapeError(ValidationError):
    """Array has the wrong shape or is not square where required."""


class GridMismatchError(ValidationError):
    """Two objects were built on different grids but must share one."""


class DomainError(ValidationError):
    """Scalar parameter outside its admissible range."""


class ZeroNormError(DomainError):
    """A ratio against a zero norm was requested."""


class TruncationError(ValidationError):
    """Field does not decay at the box edge; zero extension would lie."""


class ConditionError(ValidationError):
    """Matrix data is singular or too ill-conditioned to invert."""


class NumericError(RuntimeError):
    """Numeric procedure failed or a checked tolerance was breached."""
