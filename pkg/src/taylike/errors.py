"""Exception hierarchy shared by all taylike modules."""


class TaylikeError(Exception):
    """Base class for every error raised by this package."""


class InvalidInterval(TaylikeError):
    """Interval endpoints do not satisfy a < b, or are non-finite."""


class LengthMismatch(TaylikeError):
    """Node or weight list has the wrong length for the declared n."""


class NonMonotoneNodes(TaylikeError):
    """Scheme nodes are not non-decreasing."""


class OutOfRangeNode(TaylikeError):
    """A scheme node lies outside [0, 1]."""


class NotNormalized(TaylikeError):
    """Operation requires weights summing to 1 (within 1e-12)."""


class NonFiniteEvaluation(TaylikeError):
    """A function value or derivative came back NaN or infinite."""


class QuadratureNoConvergence(TaylikeError):
    """Adaptive quadrature hit its recursion depth cap."""


class NoConvergence(TaylikeError):
    """Iterative minimization exhausted its budget above tolerance."""


class DegenerateObjective(TaylikeError):
    """Objective is identically zero (equal curvature bounds)."""


class DomainError(TaylikeError):
    """Expression evaluated outside the domain of log, sqrt, /, or ^."""


class ExprSyntaxError(TaylikeError):
    """Malformed expression text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class UnknownIdentifier(TaylikeError):
    """Expression uses a name other than x and the supported functions."""

    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier '{name}' (offset {offset})")
        self.name = name
        self.offset = offset
