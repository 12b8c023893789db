"""Supernatural numbers and the rational groups they classify.

A supernatural number is a formal product of primes where each exponent is
a nonnegative integer or infinity.  It classifies odometers and the rank-one
groups ``G(n) = {a/b : b | n}`` up to isomorphism.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import FactorizationBoundExceeded

DEFAULT_TRIAL_BOUND = 10**6


def trial_bound() -> int:
    return int(os.environ.get("BV_TRIAL_BOUND", DEFAULT_TRIAL_BOUND))


def factorize(n: int, bound: int | None = None) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division.

    Trial divisors go up to ``bound``; numbers larger than ``bound**2`` are
    refused because a leftover cofactor could not be certified prime.
    """
    if n < 1:
        raise ValueError(f"can only factor positive integers, got {n}")
    bound = trial_bound() if bound is None else bound
    if n > bound * bound:
        raise FactorizationBoundExceeded(
            f"{n} exceeds the trial-division limit {bound}**2"
        )
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class SupernaturalNumber:
    """Prime exponents in ``N u {inf}``, kept in canonical form.

    ``finite`` maps primes to positive exponents; ``infinite`` holds the
    primes with exponent infinity.  The two key sets never overlap.
    """

    finite: tuple[tuple[int, int], ...] = ()
    infinite: frozenset[int] = field(default_factory=frozenset)

    def __init__(self, finite: Mapping[int, int] | Iterable[tuple[int, int]] = (),
                 infinite: Iterable[int] = ()):
        inf = frozenset(int(p) for p in infinite)
        items = dict(finite).items() if not isinstance(finite, Mapping) else finite.items()
        fin = {}
        for p, k in items:
            p, k = int(p), int(k)
            if k < 0:
                raise ValueError("exponents must be nonnegative")
            if k and p not in inf:
                fin[p] = k
        object.__setattr__(self, "finite", tuple(sorted(fin.items())))
        object.__setattr__(self, "infinite", inf)

    @classmethod
    def of_int(cls, n: int) -> SupernaturalNumber:
        return cls(factorize(n))

    @classmethod
    def of_sequence(cls, prefix: Iterable[int], recurring: Iterable[int] = ()) -> SupernaturalNumber:
        """``prod(prefix) * prod(recurring)**inf``."""
        acc = cls()
        for r in prefix:
            acc = acc * cls.of_int(r)
        inf = set()
        for r in recurring:
            inf |= set(factorize(r))
        return acc * cls({}, inf)

    def exponent(self, p: int) -> float:
        if p in self.infinite:
            return math.inf
        return dict(self.finite).get(p, 0)

    @property
    def is_natural(self) -> bool:
        return not self.infinite

    def __int__(self):
        if self.infinite:
            raise OverflowError("supernatural number has an infinite exponent")
        return math.prod(p**k for p, k in self.finite)

    def __mul__(self, other: SupernaturalNumber) -> SupernaturalNumber:
        if isinstance(other, int):
            other = SupernaturalNumber.of_int(other)
        fin = dict(self.finite)
        for p, k in other.finite:
            fin[p] = fin.get(p, 0) + k
        return SupernaturalNumber(fin, self.infinite | other.infinite)

    __rmul__ = __mul__

    def divides(self, other: SupernaturalNumber) -> bool:
        """``self | other``: every exponent of ``self`` is at most ``other``'s."""
        if isinstance(other, int):
            other = SupernaturalNumber.of_int(other)
        if not self.infinite <= other.infinite:
            return False
        return all(k <= other.exponent(p) for p, k in self.finite)

    def equiv(self, other: SupernaturalNumber) -> bool:
        """``a*self == b*other`` for some naturals ``a, b``.

        Same set of infinite primes suffices: canonical finite parts can
        always be balanced by natural multipliers.
        """
        return self.infinite == other.infinite

    def to_json(self) -> dict:
        return {
            "finite": {str(p): k for p, k in self.finite},
            "infinite": sorted(self.infinite),
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> SupernaturalNumber:
        out = cls({int(p): k for p, k in obj.get("finite", {}).items()},
                  obj.get("infinite", ()))
        for p in {p for p, _ in out.finite} | out.infinite:
            if factorize(p) != {p: 1}:
                raise ValueError(f"{p} is not a prime")
        return out

    def __str__(self):
        parts = [f"{p}^{k}" if k > 1 else str(p) for p, k in self.finite]
        parts += [f"{p}^inf" for p in sorted(self.infinite)]
        return "*".join(sorted(parts, key=lambda s: int(s.split("^")[0]))) or "1"


def sn_mul(a: SupernaturalNumber, b: SupernaturalNumber) -> SupernaturalNumber:
    return a * b


def sn_divides(m: SupernaturalNumber, n: SupernaturalNumber) -> bool:
    return m.divides(n)


def sn_equiv(m: SupernaturalNumber, n: SupernaturalNumber) -> bool:
    return m.equiv(n)


def rational_group_contains(n: SupernaturalNumber, x: Fraction | int) -> bool:
    """Whether ``x`` lies in ``G(n)``, i.e. its reduced denominator divides ``n``."""
    x = Fraction(x)
    if x.denominator == 1:
        return True
    return SupernaturalNumber.of_int(x.denominator).divides(n)
