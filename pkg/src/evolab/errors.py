"""Exception hierarchy shared by every evolab module."""


class EvolabError(Exception):
    """Base class for all library errors."""


class MixedFieldError(EvolabError):
    pass


class DivisionByZero(EvolabError, ZeroDivisionError):
    pass


class InfiniteFieldError(EvolabError):
    """Raised when an operation needs to enumerate a field that is infinite."""


class UnsupportedOverInfiniteField(InfiniteFieldError):
    pass


class CharacteristicTwoError(EvolabError):
    pass


class DimensionMismatch(EvolabError, ValueError):
    pass


class EnumerationCapExceeded(EvolabError):
    pass


class ParseError(EvolabError, ValueError):
    pass


class NotIdeal(EvolabError):
    pass


class NotBasicIdeal(NotIdeal):
    pass


class NotOneDimensional(EvolabError):
    pass


class NotSolvable(EvolabError):
    pass


class WrongDimension(EvolabError):
    pass


class InvalidFamilySpec(EvolabError, ValueError):
    pass


class UnsatisfiableProfile(EvolabError):
    pass


class StructuralPreconditionFailed(EvolabError):
    pass


class NormalFormScalingUnavailable(EvolabError):
    pass


class JoinEscapesSet(EvolabError):
    """A join of two members fell outside the subalgebra set (the set is incomplete)."""
