"""Exception hierarchy for hyperslice.

Every error that can surface through the CLI maps to a stable exit code;
see cli.EXIT_CODES.
"""


class HypersliceError(Exception):
    """Base class for all package errors."""


class NotPrimeError(HypersliceError):
    """Characteristic failed the primality check (or exceeds the 2^20 cap)."""


class DegreeZeroError(HypersliceError):
    """Requested extension degree < 1."""


class DivisionByZeroError(HypersliceError):
    """Field division or inversion of zero."""


class FieldMismatchError(HypersliceError):
    """Operands belong to different described fields."""


class PolySyntaxError(HypersliceError):
    """Expression text violates the grammar; carries the offending position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UnknownVariableError(PolySyntaxError):
    pass


class GeneratorInPrimeFieldError(PolySyntaxError):
    """The reserved generator name 'g' used over a prime field."""


class NegativeExponentError(PolySyntaxError):
    pass


class ArityMismatchError(HypersliceError):
    """Evaluation point length differs from the variable count."""


class ZeroPolynomialError(HypersliceError):
    """Operation undefined on the zero polynomial."""


class DimensionMismatchError(HypersliceError):
    """Projective dimensions or coordinate lengths disagree."""


class EmptyInputError(HypersliceError):
    """An operation that needs at least one item got none."""


class BudgetExceededError(HypersliceError):
    """Estimated enumeration cost exceeds the configured budget."""

    def __init__(self, estimated, budget):
        super().__init__(
            f"estimated cost {estimated} exceeds budget {budget}"
        )
        self.estimated = estimated
        self.budget = budget


class BasePointHitError(HypersliceError):
    """All morphism components vanish at an enumerated point of X."""

    def __init__(self, witness):
        super().__init__(f"morphism undefined at {witness}")
        self.witness = witness


class InconsistentDError(HypersliceError):
    """Fiber collision sum D exceeds |X|^2."""


class NonpositiveTError(HypersliceError):
    """Chebyshev tail requested with t <= 0."""


class DimensionTooSmallError(HypersliceError):
    """Slice classification needs dim X >= 1."""


class FitUnderdeterminedError(HypersliceError):
    """Growth-exponent fit needs >= 3 usable (q, count) points."""


class ScenarioError(HypersliceError):
    """Scenario document failed validation or instantiation."""
