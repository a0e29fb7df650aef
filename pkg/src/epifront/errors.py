"""Exception hierarchy shared across the package."""


class EpifrontError(Exception):
    """Base class for all package errors."""


class IllegalParams(EpifrontError):
    """A kernel/reaction/model parameter is outside its legal range."""


class HypothesisViolated(EpifrontError):
    """A standing hypothesis on the kernels or reactions fails.

    Carries the name of the failing clause in ``clause``.
    """

    def __init__(self, clause: str, message: str = ""):
        self.clause = clause
        super().__init__(message or f"hypothesis clause failed: {clause}")


class NoPositiveEquilibrium(EpifrontError):
    """Requested the positive equilibrium but the basic reproduction number is <= 1."""


class BracketFailure(EpifrontError):
    """A scalar root scan found no sign change within its budget."""


class DomainExceedsGrid(EpifrontError):
    """A requested domain length does not fit the allocated grid."""


class NoConvergence(EpifrontError):
    """An iterative solver exhausted its iteration budget above tolerance."""


class PreconditionFailed(EpifrontError):
    """An operation was invoked outside its documented precondition."""


class NotUniquelyBracketed(EpifrontError):
    """Upper and lower steady-state iterates stalled with a gap above tolerance."""


class LadderExhausted(EpifrontError):
    """The half-line truncation ladder hit the grid cap before stabilizing."""


class StabilityViolation(EpifrontError):
    """Requested time step exceeds the explicit-Euler stability bound."""


class GridExhausted(EpifrontError):
    """The moving front ran past the allocated grid."""


class IncomparableRuns(EpifrontError):
    """Two trajectories cannot be compared (different grid or time step)."""


class NoBracket(EpifrontError):
    """Threshold bisection could not establish a bracketed verdict pair."""


class ParseError(EpifrontError):
    """Configuration file is malformed or has an invalid schema."""


class ValidationError(EpifrontError):
    """Configuration failed model-hypothesis validation.

    ``clause`` names the failing hypothesis clause when known.
    """

    def __init__(self, message: str, clause: str | None = None):
        self.clause = clause
        super().__init__(message)


class SchemaMismatch(EpifrontError):
    """An input table is missing a required column."""
