"""Exception hierarchy.

Every error raised on bad input derives from :class:`BVError` (and from
``ValueError`` so callers that only know the stdlib still catch it).
:class:`InternalInvariantError` is different: it means the library caught
itself computing something inconsistent, and it is never a user mistake.
"""

from __future__ import annotations


class BVError(ValueError):
    """Base class for invalid input or an operation that cannot proceed."""


class InternalInvariantError(RuntimeError):
    """An internal cross-check failed. Always a bug."""


# diagram-core

class InvalidDiagram(BVError):
    pass


class EmptyInput(InvalidDiagram):
    pass


class DimensionMismatch(InvalidDiagram):
    pass


class ZeroRow(InvalidDiagram):
    pass


class ZeroColumn(InvalidDiagram):
    pass


class CutsOutOfRange(BVError):
    pass


class NotIncreasing(BVError):
    pass


class NotERS(BVError):
    def __init__(self, message: str, level: int | None = None):
        super().__init__(message)
        self.level = level


class NoTail(BVError):
    pass


class UnrollLimitExceeded(BVError):
    pass


class FactorizationBoundExceeded(BVError):
    pass


# ordering-vershik

class InvalidOrder(BVError):
    pass


class InvalidPath(BVError):
    pass


class RankOutOfBounds(BVError):
    pass


class MaxOfTower(BVError):
    """The path is the last one in its tower at this level."""


class MinOfTower(BVError):
    """The path is the first one in its tower at this level."""


# toeplitz-analysis

class NotProperlyOrdered(BVError):
    def __init__(self, decision):
        super().__init__(f"diagram is not certified properly ordered ({decision})")
        self.decision = decision


class DepthExhausted(BVError):
    pass


class WindowTooShort(BVError):
    pass


class SkeletonMismatch(InternalInvariantError):
    pass


# k0-algebra

class LevelTooLow(BVError):
    pass


# realization

class InvalidCoefficients(BVError):
    pass


class InvalidPairs(BVError):
    pass


class BaseTooSmall(BVError):
    pass


class LevelBeyondSpec(BVError):
    pass


class UncertifiedRegime(BVError):
    pass
