"""Exception hierarchy shared by all rsplab modules."""


class RSPError(ValueError):
    """Base class for every error raised by rsplab."""


class DimensionMismatchError(RSPError):
    pass


class NotNormalizedError(RSPError):
    pass


class NotUnitaryError(RSPError):
    pass


class LinearDependenceError(RSPError):
    pass


class NotOrthonormalError(RSPError):
    pass


class ZeroProbabilityError(RSPError):
    pass


class DivisionAlgebraError(RSPError):
    """A multiplication table violates a normed division algebra law."""


class InvalidFamilyError(RSPError):
    pass


class ComplexTargetError(RSPError):
    """A real-coefficient target was required but imaginary parts were found."""


class UnrealizableDimensionError(RSPError):
    pass


class PhaseConventionError(RSPError):
    """The first phase of an equal-magnitude target is not exactly zero."""
