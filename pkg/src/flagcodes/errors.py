"""Exception types raised across the package."""


class FlagCodeError(ValueError):
    """Base class for all errors raised by this package."""


class NonPrimeP(FlagCodeError):
    """Field characteristic is not a prime number."""


class ModulusNotPrimitive(FlagCodeError):
    """Supplied field modulus is reducible or not primitive."""


class DivisionByZero(FlagCodeError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class NotPrimitive(FlagCodeError):
    """Polynomial is not primitive over the requested field."""


class FieldMismatch(FlagCodeError):
    """Operands belong to different finite fields."""


class DimensionMismatch(FlagCodeError):
    """Matrix shapes are incompatible for the requested operation."""


class IndexOutOfRange(FlagCodeError, IndexError):
    """Row, shot, or flag index outside the valid range."""


class AmbientMismatch(FlagCodeError):
    """Subspaces live in different ambient spaces."""


class TooLarge(FlagCodeError):
    """Instance exceeds the exhaustive-enumeration bounds."""


class TypeMismatch(FlagCodeError):
    """Flags (or flag-like sequences) have incompatible types."""


class CodeTooSmall(FlagCodeError):
    """A code must contain at least two codewords."""


class NotDivisor(FlagCodeError):
    """Requested subspace dimension does not divide the ambient dimension."""


class NotPlanar(FlagCodeError):
    """Spread is not planar (ambient dimension is not twice the member dimension)."""


class RankDeficient(FlagCodeError):
    """A matrix that must have full rank does not."""


class TypeNotSubset(FlagCodeError):
    """Puncturing type is not a subset of the code's type."""


class ShapeMismatch(FlagCodeError):
    """Injected channel matrix has the wrong shape."""


class NotDisjoint(FlagCodeError):
    """Code is not disjoint, so per-dimension lookup is ambiguous."""


class ParseError(FlagCodeError):
    """Malformed code file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
