"""Finite-level arithmetic in the dimension group of a Bratteli diagram.

An element is a pair ``(level, vector)``; two pairs are equal when they
agree after pushing both to some common deeper level.  The order unit is
``(0, (1,))``, the class of the single vertex at the top.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .decision import Sign
from .diagram import BratteliDiagram, matvec, require_ers, supernatural_of, tower_height
from .errors import LevelTooLow
from .supernatural import SupernaturalNumber


@dataclass(frozen=True)
class K0Element:
    level: int
    vector: tuple[int, ...]

    def __init__(self, level: int, vector: Sequence[int]):
        if level < 0:
            raise ValueError("level must be nonnegative")
        vec = tuple(vector)
        if not vec or any(isinstance(x, bool) or not isinstance(x, int) for x in vec):
            raise ValueError("vector must be a nonempty sequence of integers")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "vector", vec)

    def check(self, diagram: BratteliDiagram) -> K0Element:
        size = diagram.num_vertices(self.level)
        if len(self.vector) != size:
            raise ValueError(f"level {self.level} has {size} vertices, vector has {len(self.vector)}")
        return self

    @property
    def is_zero(self) -> bool:
        return not any(self.vector)

    def to_json(self) -> dict:
        return {"level": self.level, "vector": list(self.vector)}


def order_unit() -> K0Element:
    return K0Element(0, (1,))


def k0_push(diagram: BratteliDiagram, g: K0Element, to_level: int) -> K0Element:
    """Image of ``g`` at ``to_level`` under ``M_to ... M_{level+1}``."""
    g.check(diagram)
    if to_level < g.level:
        raise LevelTooLow(f"cannot push level {g.level} down to {to_level}")
    v = g.vector
    for n in range(g.level + 1, to_level + 1):
        v = matvec(diagram.matrix(n), v)
    return K0Element(to_level, v)


def k0_add(diagram: BratteliDiagram, g: K0Element, h: K0Element) -> K0Element:
    top = max(g.level, h.level)
    a, b = k0_push(diagram, g, top), k0_push(diagram, h, top)
    return K0Element(top, tuple(x + y for x, y in zip(a.vector, b.vector)))


def k0_neg(g: K0Element) -> K0Element:
    return K0Element(g.level, tuple(-x for x in g.vector))


def k0_equal(diagram: BratteliDiagram, g: K0Element, h: K0Element, depth: int) -> bool:
    """Whether ``g`` and ``h`` coincide at some level up to ``depth``.

    ``False`` only means no coincidence was seen that far.
    """
    return k0_positivity(diagram, k0_add(diagram, g, k0_neg(h)), depth) == Sign.ZERO


def k0_positivity(diagram: BratteliDiagram, g: K0Element, depth: int) -> Sign:
    """Sign of ``g`` read off its pushforwards up to level ``depth``.

    A strictly positive pushforward certifies a positive element on a
    simple diagram; vectors that keep mixed signs give ``unknown``.
    """
    g.check(diagram)
    top = max(depth, g.level)
    v = g
    while True:
        if not any(v.vector):
            return Sign.ZERO
        if all(x > 0 for x in v.vector):
            return Sign.POSITIVE
        if all(x < 0 for x in v.vector):
            return Sign.NEGATIVE
        if v.level >= top or v.level >= diagram.known_depth:
            return Sign.unknown(v.level)
        v = k0_push(diagram, v, v.level + 1)


def gamma_rational(diagram: BratteliDiagram, g: K0Element, depth: int) -> Fraction | None:
    """``Gamma(g) = c / p_l`` once ``g`` becomes the constant vector ``c`` at level ``l``.

    A constant vector at level ``l`` means ``p_l * g = c * u``.  ``None``
    when no constant pushforward appears by level ``depth``.
    """
    require_ers(diagram)
    g.check(diagram)
    top = max(depth, g.level)
    v = g
    while True:
        if len(set(v.vector)) == 1:
            p = tower_height(diagram, v.level) if v.level else 1
            return Fraction(v.vector[0], p)
        if v.level >= top or v.level >= diagram.known_depth:
            return None
        v = k0_push(diagram, v, v.level + 1)


def eigenvalue_test(diagram: BratteliDiagram, p: int) -> bool:
    """Whether ``exp(2 pi i / p)`` is a continuous eigenvalue, i.e. ``p | supernatural``."""
    if p < 2:
        raise ValueError("p must be at least 2")
    return SupernaturalNumber.of_int(p).divides(supernatural_of(diagram))


@dataclass(frozen=True)
class EquicontinuousFactor:
    """The odometer ``Z_n`` with eigenvalues ``exp(2 pi i s)``, ``s in G(n)``."""

    supernatural: SupernaturalNumber

    def has_eigenvalue(self, s: Fraction | int) -> bool:
        s = Fraction(s)
        return s.denominator == 1 or SupernaturalNumber.of_int(s.denominator).divides(self.supernatural)

    @property
    def description(self) -> str:
        return f"odometer Z_({self.supernatural}); eigenvalues exp(2*pi*i*s) for s in G({self.supernatural})"

    def to_json(self) -> dict:
        return {"supernatural": self.supernatural.to_json(), "description": self.description}


def max_equicontinuous_factor(diagram: BratteliDiagram) -> EquicontinuousFactor:
    return EquicontinuousFactor(supernatural_of(diagram))
