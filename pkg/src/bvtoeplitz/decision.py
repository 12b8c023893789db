"""Three-valued answers for questions that are only semi-decidable.

Questions about an infinite diagram (is it simple, is the order proper, is
an element positive) can often be settled by looking at finitely many
levels, but not always.  When the bounded search fails we say so and record
how far we looked, instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Decision:
    """``Decision.YES``, ``Decision.NO`` or ``Decision.unknown(depth)``."""

    kind: str
    depth: int | None = None

    YES = None  # type: Decision
    NO = None  # type: Decision

    def __post_init__(self):
        if self.kind not in ("yes", "no", "unknown"):
            raise ValueError(f"bad decision kind {self.kind!r}")
        if (self.kind == "unknown") != (self.depth is not None):
            raise ValueError("only an unknown decision carries a depth")
        if self.depth is not None and self.depth < 0:
            raise ValueError("explored depth must be nonnegative")

    @classmethod
    def unknown(cls, depth: int) -> Decision:
        return cls("unknown", depth)

    @property
    def is_yes(self) -> bool:
        return self.kind == "yes"

    @property
    def is_no(self) -> bool:
        return self.kind == "no"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    def to_json(self):
        if self.is_unknown:
            return {"unknown": self.depth}
        return self.kind

    def __str__(self):
        return f"unknown@{self.depth}" if self.is_unknown else self.kind


Decision.YES = Decision("yes")
Decision.NO = Decision("no")


@dataclass(frozen=True)
class Sign:
    """Outcome of a positivity test in the dimension group."""

    kind: str
    depth: int | None = None

    POSITIVE = None  # type: Sign
    NEGATIVE = None  # type: Sign
    ZERO = None  # type: Sign

    def __post_init__(self):
        if self.kind not in ("positive", "negative", "zero", "unknown"):
            raise ValueError(f"bad sign kind {self.kind!r}")
        if (self.kind == "unknown") != (self.depth is not None):
            raise ValueError("only an unknown sign carries a depth")

    @classmethod
    def unknown(cls, depth: int) -> Sign:
        return cls("unknown", depth)

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    def to_json(self):
        if self.is_unknown:
            return {"unknown": self.depth}
        return self.kind

    def __str__(self):
        return f"unknown@{self.depth}" if self.is_unknown else self.kind


Sign.POSITIVE = Sign("positive")
Sign.NEGATIVE = Sign("negative")
Sign.ZERO = Sign("zero")
