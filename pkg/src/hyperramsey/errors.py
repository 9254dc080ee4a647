"""Exception types raised across the package."""


class HyperRamseyError(Exception):
    """Base class for every error raised by this package."""


class InvalidStructure(HyperRamseyError, ValueError):
    """A structural invariant does not hold."""


class IndexNotContained(HyperRamseyError, ValueError):
    pass


class ShapeMismatch(HyperRamseyError, ValueError):
    pass


class DegreeCapExceeded(HyperRamseyError, ValueError):
    pass


class MissingAssignment(HyperRamseyError, KeyError):
    pass


class UnmappedColor(HyperRamseyError, KeyError):
    pass


class DomainOverlap(HyperRamseyError, ValueError):
    pass


class EmptyAmbientClass(HyperRamseyError, ValueError):
    pass


class NotInducedRestriction(HyperRamseyError, ValueError):
    pass


class BaseNotEmbedded(HyperRamseyError, ValueError):
    pass


class NoEmbeddingOfBase(HyperRamseyError, ValueError):
    """The conditioning event of a conditional probability is empty."""


class EmptyFrame(HyperRamseyError, ValueError):
    """No ambient edge realizes the frame color a density is conditioned on."""

    def __init__(self, message, frame=None, edge=None):
        super().__init__(message)
        self.frame = frame
        self.edge = edge


class ZeroDensityDivisor(HyperRamseyError, ZeroDivisionError):
    pass


class ClassTooSmall(HyperRamseyError, ValueError):
    pass


class BudgetExceeded(HyperRamseyError):
    """A search ran out of budget; ``bracket`` holds what is known so far."""

    def __init__(self, message, bracket=(None, None)):
        super().__init__(message)
        self.bracket = bracket


class SchemaError(HyperRamseyError, ValueError):
    """A document failed validation. ``line``/``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None, path=()):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column
        self.path = tuple(path)


class DanglingReference(SchemaError):
    pass
