"""Exception hierarchy.

Every domain error records the name of the operation that raised it so the
command-line front end can report where a failure originated.
"""

from __future__ import annotations


class CurveStrataError(Exception):
    """Base class for all domain errors raised by the library."""

    def __init__(self, operation: str, message: str = "") -> None:
        self.operation = operation
        self.message = message
        super().__init__(f"{operation}: {message}" if message else operation)

    @property
    def kind(self) -> str:
        return type(self).__name__


# algebra
class DivisionByZero(CurveStrataError, ZeroDivisionError):
    pass


class FieldMismatch(CurveStrataError):
    pass


class DegreeMismatch(CurveStrataError):
    pass


class NotDivisible(CurveStrataError):
    pass


class BothZero(CurveStrataError):
    pass


class ZeroPoint(CurveStrataError):
    pass


class ZeroForm(CurveStrataError):
    pass


# projective
class AllZero(CurveStrataError):
    pass


class DimensionMismatch(CurveStrataError):
    pass


class SingularMatrix(CurveStrataError):
    pass


# morphism
class IndeterminateAtPoint(CurveStrataError):
    pass


class ConstantMorphism(CurveStrataError):
    pass


class ConstantReparametrization(CurveStrataError):
    pass


class InconclusiveOverSmallField(CurveStrataError):
    pass


class NonIntegralRatio(CurveStrataError):
    pass


# blowup
class AmbiguousLift(CurveStrataError):
    pass


class ExceptionalCurve(CurveStrataError):
    pass


class ConstantExceptional(CurveStrataError):
    pass


class NoExceptionalCurves(CurveStrataError):
    pass


class ConstantLabel(CurveStrataError):
    pass


class IncidenceViolation(CurveStrataError):
    """A lifted morphism failed the blow-up incidence relation (internal bug)."""


class DuplicatePoints(CurveStrataError):
    pass


# census
class BudgetExceeded(CurveStrataError):
    pass


class NonPrimeField(CurveStrataError):
    pass


class InsufficientData(CurveStrataError):
    pass


class ZeroCount(CurveStrataError):
    pass


# parsing
class FormSyntaxError(CurveStrataError):
    """Malformed input text; ``position`` is a 0-based character offset."""

    def __init__(self, operation: str, message: str, position: int) -> None:
        self.position = position
        super().__init__(operation, f"{message} at position {position}")


class NotHomogeneous(CurveStrataError):
    pass


class BadScalarLiteral(CurveStrataError):
    pass
