"""
Exception types shared across the package.

Errors fall into three groups: bad user input (InvalidParams,
DimensionMismatch, ...), mathematically meaningful rejections
(NotASolution, SquareConditionViolated, ...), and guarded internal
assertions that signal a bug rather than bad input (InternalInvariantError
subclasses).  Resource exhaustion gets its own class so callers can
distinguish "ran out of budget" from "wrong answer".
"""


class LensQError(Exception):
    """Base class for all package errors."""


class InvalidParams(LensQError):
    """Lens space parameters are out of range or not coprime."""


class DimensionMismatch(LensQError):
    """A vector's length does not match the system it is used with."""


class EmptyVector(LensQError):
    """A non-zero vector was required."""


class NegativeEntry(LensQError):
    """A non-negative vector was required."""


class NotASolution(LensQError):
    """The vector does not satisfy the linear system in question."""


class SquareConditionViolated(LensQError):
    """Some coordinate block has more than one non-zero quad count."""


class IntegralityViolated(LensQError):
    """Basis coefficients of an integral solution failed to classify.

    This signals an upstream bug: for integral solutions the coefficient
    sets always lie in Z or Z + 1/2.
    """


class NoExpectation(LensQError):
    """No closed-form expected answer is available for these parameters."""


class BudgetExceeded(LensQError):
    """An enumeration ran out of time or frontier space.

    Partial results are never returned; the caller must retry with a
    larger budget.
    """


class InternalInvariantError(LensQError):
    """A guarded internal assertion failed; indicates a bug, not bad input."""


class SingularSystem(InternalInvariantError):
    """Basis decomposition hit a singular system; must not occur for
    coprime parameters."""


class InconsistentPropagation(InternalInvariantError):
    """Trigon reconstruction found contradictory corner equations."""


class InconsistentWeights(InternalInvariantError):
    """Edge slots of one edge class disagree on the crossing count."""


class ArityMismatch(InternalInvariantError):
    """Arc counts disagree across a glued face."""
