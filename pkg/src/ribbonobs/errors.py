"""Exception hierarchy.

The CLI maps these onto exit codes: ``InputError`` subclasses exit 1,
``HypothesisRefused`` exits 2 and ``InvariantViolation`` exits 3.
"""


class RibbonObsError(Exception):
    """Base class for every error raised by this package."""


class InputError(RibbonObsError, ValueError):
    """Malformed or inconsistent input data."""


class DimensionError(InputError):
    pass


class RankError(InputError):
    pass


class NotSeifertMatrix(InputError):
    pass


class DegenerateParameter(InputError):
    """A parameter makes a quotient or a formula degenerate (p = 0, p = 1, n = 0)."""


class BoundExceeded(RibbonObsError):
    pass


class HypothesisRefused(RibbonObsError):
    """The input lies outside the hypotheses under which an answer is proved."""


class InvariantViolation(RibbonObsError, AssertionError):
    """An internal consistency check failed. Always a bug."""
