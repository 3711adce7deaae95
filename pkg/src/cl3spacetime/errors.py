"""Exception hierarchy shared by every module of the package."""


class CliffordError(Exception):
    """Base class for all errors raised by cl3spacetime."""


class ArgumentError(CliffordError, ValueError):
    """An argument is outside the domain of an operation."""


class NonFiniteError(CliffordError, ArithmeticError):
    """An operation produced NaN or Inf coefficients."""


class VectorDivisionError(CliffordError, ZeroDivisionError):
    pass


class ConvergenceError(CliffordError, ArithmeticError):
    pass


class SuperluminalError(ArgumentError):
    """A speed at or above the speed of light was supplied."""


class InvariantError(CliffordError):
    """A physical or algebraic invariant was violated beyond tolerance."""


class DegenerateGeometryError(CliffordError, ValueError):
    pass


class UnitError(CliffordError, ValueError):
    """Objects carrying different values of c were combined."""


class AccuracyError(CliffordError):
    """A numerical integration setting cannot reach the requested accuracy."""
