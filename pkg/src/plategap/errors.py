"""Exception hierarchy shared by every solver."""


class PlateGapError(Exception):
    """Base class for all package errors."""


class DomainError(PlateGapError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class NearResonanceError(DomainError):
    """A parameter makes a denominator ``m**2 - alpha**2`` vanish."""


class EmptyClassError(PlateGapError, ValueError):
    """A class enumeration produced no admissible member."""


class NumericError(PlateGapError, ArithmeticError):
    """A numerical procedure failed or produced an inconsistent result."""


class EigenvalueNotFoundError(NumericError):
    """No sign change of the eigenvalue determinant was found in the bracket."""
