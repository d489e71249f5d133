"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`SkewRankError`,
which itself is a :class:`ValueError` so that callers validating user input can
catch the generic type.
"""

from __future__ import annotations


class SkewRankError(ValueError):
    """Base class for all library errors."""


# fields and towers
class NonPrimeError(SkewRankError):
    pass


class ReducibleModulusError(SkewRankError):
    pass


class BadIntermediateError(SkewRankError):
    pass


class ZeroInputError(SkewRankError):
    pass


class ZeroLambdaError(SkewRankError):
    pass


class DuplicateLambdaError(SkewRankError):
    pass


class EvenCharacteristicError(SkewRankError):
    pass


class TowerMismatchError(SkewRankError):
    pass


class FieldMembershipError(SkewRankError):
    """An element is not in the subfield an operation requires."""


# skew polynomials
class DivisionByZeroError(SkewRankError, ZeroDivisionError):
    pass


class BothZeroError(SkewRankError):
    pass


class ZeroAlphaError(SkewRankError):
    pass


class ZeroPolynomialError(SkewRankError):
    pass


# quotient by H_Lambda
class ContextMismatchError(SkewRankError):
    pass


class NormMismatchError(SkewRankError):
    pass


class TooManyBlocksError(SkewRankError):
    pass


class LambdaNotCyclicGroupError(SkewRankError):
    pass


# frameworks
class BadDimensionError(SkewRankError):
    pass


class ShapeMismatchError(SkewRankError):
    pass


# codes
class EtaConditionViolatedError(SkewRankError):
    pass


class GammaConditionViolatedError(SkewRankError):
    pass


class LambdaNotSquaresError(SkewRankError):
    pass


class OddExtensionDegreeError(SkewRankError):
    pass


class LambdaNotDistinctError(SkewRankError):
    pass


class MessageFieldViolationError(SkewRankError):
    pass


class EnumerationBudgetExceededError(SkewRankError):
    pass


class InexactDistanceError(SkewRankError):
    pass


class NonUnitMultiplierError(SkewRankError):
    pass


class ParseError(SkewRankError):
    """Malformed textual input; ``position`` is the offending character index."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)
