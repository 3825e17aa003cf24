"""Shared exceptions. ValidationError subclasses map to CLI exit code 2,
InternalInvariantViolation to exit code 3."""


class ValidationError(ValueError):
    """Bad user-supplied data (weights, patterns, shifts, ...)."""


class NotCovariantError(ValidationError):
    pass


class NotAdmissibleError(ValidationError):
    pass


class IndexOutOfTriangleError(ValidationError):
    pass


class ShapeMismatchError(ValidationError):
    pass


class HypothesisNotMetError(ValidationError):
    pass


class OrderingViolationError(ValidationError):
    pass


class NotNoncrossingError(ValidationError):
    pass


class NoHighestVectorError(ValidationError):
    pass


class NotEigenError(ValidationError):
    pass


class NotDominantError(ValidationError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


class PoleError(ArithmeticError):
    pass


class PoleHitError(PoleError):
    """A lowering/raising series was evaluated at one of its poles."""


class InsufficientSamplesError(ValueError):
    pass


class InconsistentSamplesError(ValueError):
    pass


class InvarianceViolationError(AssertionError):
    """A subspace that must be invariant is not: implementation bug."""


class InternalInvariantViolation(AssertionError):
    """The code produced a state the theory forbids: implementation bug."""
