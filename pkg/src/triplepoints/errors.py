"""Exception types raised across the package."""


class TriplePointsError(Exception):
    """Base class for all errors raised by triplepoints."""


# fields
class NonPrime(TriplePointsError, ValueError):
    pass


class ReducibleQuadratic(TriplePointsError, ValueError):
    pass


class FieldMismatch(TriplePointsError, TypeError):
    pass


class DivisionByZero(TriplePointsError, ZeroDivisionError):
    pass


class UnsupportedDegree(TriplePointsError, ValueError):
    pass


class InfiniteField(TriplePointsError, ValueError):
    pass


class CapExceeded(TriplePointsError, RuntimeError):
    pass


# projective geometry
class DimensionMismatch(TriplePointsError, ValueError):
    pass


class NoCenterFound(TriplePointsError, RuntimeError):
    pass


class InvalidCenter(TriplePointsError, ValueError):
    pass


# incidence structures
class OutOfRange(TriplePointsError, IndexError):
    pass


class UnknownName(TriplePointsError, KeyError):
    def __str__(self):
        return f"unknown name: {self.args[0]}" if self.args else "unknown name"


class InvalidStructure(TriplePointsError, ValueError):
    """Raised when an operation needs a linear (validated) structure."""


# arrangements and realizations
class DegenerateColumn(TriplePointsError, ValueError):
    pass


class DuplicateLine(TriplePointsError, ValueError):
    pass


class SizeMismatch(TriplePointsError, ValueError):
    pass


class NoFrame(TriplePointsError, ValueError):
    """The structure has no four elements with no three in a common block."""


class ParseError(TriplePointsError, ValueError):
    pass
