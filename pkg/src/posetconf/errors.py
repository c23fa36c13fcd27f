"""Exception types shared across the package."""

from __future__ import annotations


class PosetConfError(Exception):
    """Base class for every error raised by posetconf."""


# poset


class PosetError(PosetConfError):
    pass


class AntisymmetryViolation(PosetError):
    pass


class UnknownElement(PosetError):
    pass


class ElementMismatch(PosetError):
    pass


class NotCoveringPair(PosetError):
    pass


class NotDominating(PosetError):
    pass


class InvalidGluing(PosetError):
    pass


class TooLarge(PosetConfError):
    pass


# exact linear algebra


class LinearAlgebraError(PosetConfError):
    pass


class NotPrime(LinearAlgebraError):
    pass


class NoSolution(LinearAlgebraError):
    pass


class AmbientMismatch(LinearAlgebraError):
    pass


class DimensionMismatch(LinearAlgebraError):
    pass


# quiver representations


class RepError(PosetConfError):
    pass


class ShapeMismatch(RepError):
    pass


class RelationViolated(RepError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"relation {index} does not vanish")


class NotIntertwining(RepError):
    pass


class QuiverMismatch(RepError):
    pass


class CompositionMismatch(RepError):
    pass


class NotMultiplicityFree(RepError):
    pass


class NotNilpotent(RepError):
    pass


class IncompatibleOrder(RepError):
    pass


class NotSplit(RepError):
    """Raised when a short exact sequence has no retraction. This is an answer, not a fault."""


# configurations


class ConfigError(PosetConfError):
    pass


class MissingEntry(ConfigError):
    pass


class FamilyAxiomViolation(ConfigError):
    def __init__(self, a, b, message: str = ""):
        self.a = a
        self.b = b
        super().__init__(message or f"family axiom fails for s-sets {sorted(a)} and {sorted(b)}")


class PosetMismatch(ConfigError):
    pass


class NotAChain(ConfigError):
    pass


class NotAnFSet(ConfigError):
    pass


class NotMonotone(ConfigError):
    pass


class NotSurjective(ConfigError):
    pass


class GluingMismatch(ConfigError):
    pass


class BadParameterLength(ConfigError):
    pass


class TooMany(ConfigError):
    pass


# documents


class DocumentError(PosetConfError):
    pass


class ParseError(DocumentError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class InvariantError(DocumentError):
    def __init__(self, invariant: str, message: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {message}" if message else invariant)
