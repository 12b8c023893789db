"""Explicit diagram families: odometers, continued fractions, 2-symmetric diagrams."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .decision import Decision
from .diagram import BratteliDiagram, Matrix, matmul, new_diagram
from .errors import (
    BaseTooSmall,
    InternalInvariantError,
    InvalidCoefficients,
    InvalidPairs,
    LevelBeyondSpec,
    UncertifiedRegime,
)
from .k0 import K0Element
from .ordering import OrderedDiagram, order_left_right


def odometer_diagram(base: Sequence[int], tail: Sequence[int] | None = None) -> OrderedDiagram:
    """One vertex per level with ``a_n`` parallel edges, ordered by copy."""
    base, tail = list(base), list(tail or ())
    if not base and not tail:
        raise BaseTooSmall("an odometer needs at least one base digit")
    for a in base + tail:
        if isinstance(a, bool) or not isinstance(a, int) or a < 2:
            raise BaseTooSmall(f"odometer bases must be integers >= 2, got {a!r}")
    if not base:  # levels start with the first tail digit, tail rotates
        base, tail = tail[:1], tail[1:] + tail[:1]
    return order_left_right(new_diagram([[[a]] for a in base], [[[a]] for a in tail] or None))


# -- continued fractions -------------------------------------------------------

FracMatrix = tuple[tuple[Fraction, ...], ...]


def _fmul(a, b) -> FracMatrix:
    return tuple(tuple(sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b))
                 for row in a)


def _diag(entries) -> FracMatrix:
    n = len(entries)
    return tuple(tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class CFRealization:
    """Equal-row-sum diagram ``B`` intertwined with the continued-fraction limit ``A``.

    Lists are indexed from level 1: ``A[0]`` is ``A_1``.  ``Jprime`` and
    ``J`` hold diagonals only; ``J_1`` is the identity and ``Jprime[0]``,
    ``m_list[0]``, ``k_list[0]`` are the trivial values 1.
    """

    coefficients: tuple[int, ...]
    A: tuple[Matrix, ...]
    Jprime: tuple[tuple[Fraction, ...], ...]
    J: tuple[tuple[Fraction, ...], ...]
    m_list: tuple[int, ...]
    k_list: tuple[int, ...]
    B: tuple[Matrix, ...]

    def diagram(self) -> BratteliDiagram:
        return new_diagram(self.B)

    def verify(self) -> None:
        """Recheck every structural claim; raise on the first failure."""
        J = [(Fraction(1),)] + list(self.J)  # J_0 is 1x1
        for n in range(1, len(self.B) + 1):
            b, a, k = self.B[n - 1], self.A[n - 1], self.k_list[n - 1]
            if any(sum(row) != k for row in b):
                raise InternalInvariantError(f"B_{n} rows do not sum to k_{n} = {k}")
            if any(x < 0 or x % n for row in b for x in row):
                raise InternalInvariantError(f"B_{n} has an entry not divisible by {n}")
            if _fmul(b, _diag(J[n - 1])) != _fmul(_diag(J[n]), a):
                raise InternalInvariantError(f"B_{n} J_{n - 1} != J_{n} A_{n}")

    def provenance(self) -> dict:
        f = lambda x: f"{x.numerator}/{x.denominator}"
        return {
            "coefficients": list(self.coefficients),
            "k": list(self.k_list),
            "m": list(self.m_list),
            "J": [[f(x) for x in d] for d in self.J],
            "Jprime": [[f(x) for x in d] for d in self.Jprime],
        }


def cf_to_ers(coefficients: Sequence[int]) -> CFRealization:
    """Run the equal-row-sum normalisation on ``(a_0 = 1, a_1, ..., a_T)``.

    At level ``n`` the rows of ``A_n J_{n-1}^{-1}`` are scaled to sum to one
    (``J'_n``), then multiplied by ``k_n = n * m_n`` with ``m_n`` the lcm of
    the denominators, which clears them and makes every entry divisible by
    ``n``.  The result covers levels ``1 .. T + 1``.
    """
    coeffs = list(coefficients)
    if len(coeffs) < 2:
        raise InvalidCoefficients("need a_0 and at least one more coefficient")
    for a in coeffs:
        if isinstance(a, bool) or not isinstance(a, int) or a < 1:
            raise InvalidCoefficients(f"coefficients must be positive integers, got {a!r}")
    if coeffs[0] != 1:
        raise InvalidCoefficients("only a_0 = 1 is supported")

    A: list[Matrix] = [((1,), (1,))]
    A += [((a, 1), (1, 0)) for a in coeffs[:-1]]
    Jp = [(Fraction(1), Fraction(1))]
    J = [(Fraction(1), Fraction(1))]
    ms, ks, B = [1], [1], [A[0]]
    for n in range(2, len(A) + 1):
        prev = J[-1]
        c = [[Fraction(x) / prev[j] for j, x in enumerate(row)] for row in A[n - 1]]
        jp = tuple(1 / sum(row) for row in c)
        c = [[jp[i] * x for x in row] for i, row in enumerate(c)]
        m = math.lcm(*(x.denominator for row in c for x in row))
        k = n * m
        J.append(tuple(k * x for x in jp))
        Jp.append(jp)
        ms.append(m)
        ks.append(k)
        B.append(tuple(tuple(int(k * x) for x in row) for row in c))
    out = CFRealization(tuple(coeffs), tuple(A), tuple(Jp), tuple(J), tuple(ms), tuple(ks), tuple(B))
    out.verify()
    return out


# -- 2-symmetric diagrams ------------------------------------------------------

@dataclass(frozen=True)
class TwoSymmetricSpec:
    """``M_n = [[l_n, k_n], [k_n, l_n]]`` for ``n >= 2``.

    ``pairs`` gives levels ``2 .. len(pairs) + 1``; ``tail`` (optional)
    repeats forever after them.
    """

    pairs: tuple[tuple[int, int], ...]
    tail: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        object.__setattr__(self, "tail", tuple(tuple(p) for p in self.tail))
        if not self.pairs and not self.tail:
            raise InvalidPairs("need at least one (l, k) pair")
        for p in self.pairs + self.tail:
            if len(p) != 2 or any(isinstance(x, bool) or not isinstance(x, int) for x in p):
                raise InvalidPairs(f"bad pair {p!r}")
            l, k = p
            if not 1 <= k < l:
                raise InvalidPairs(f"need 1 <= k < l, got l={l}, k={k}")

    @classmethod
    def from_qr(cls, qs: Sequence[int], rs: Sequence[int], tail: bool = False) -> TwoSymmetricSpec:
        if len(qs) != len(rs):
            raise InvalidPairs("q and r lists differ in length")
        pairs = []
        for q, r in zip(qs, rs):
            if (q - r) % 2:
                raise InvalidPairs(f"q={q} and r={r} differ in parity")
            pairs.append(((q + r) // 2, (q - r) // 2))
        return cls((), pairs) if tail else cls(pairs)

    @property
    def known_depth(self) -> int | float:
        return math.inf if self.tail else len(self.pairs) + 1

    def pair(self, n: int) -> tuple[int, int]:
        if n < 2:
            raise ValueError("pairs start at level 2")
        if n > self.known_depth:
            raise LevelBeyondSpec(f"level {n} is beyond the {len(self.pairs) + 1} specified levels")
        i = n - 2
        if i < len(self.pairs):
            return self.pairs[i]
        return self.tail[(i - len(self.pairs)) % len(self.tail)]

    def q(self, n: int) -> int:
        if n == 1:
            return 2
        l, k = self.pair(n)
        return l + k

    def r(self, n: int) -> int:
        l, k = self.pair(n)
        return l - k

    def matrix(self, n: int) -> Matrix:
        l, k = self.pair(n)
        return ((l, k), (k, l))


def two_symmetric(spec: TwoSymmetricSpec) -> OrderedDiagram:
    """The left-right ordered diagram with ``M_1 = (1, 1)^t``."""
    levels = [((1,), (1,))] + [spec.matrix(n) for n in range(2, len(spec.pairs) + 2)]
    tail = [((l, k), (k, l)) for l, k in spec.tail]
    return order_left_right(new_diagram(levels, tail or None))


def two_symmetric_product(spec: TwoSymmetricSpec, n: int) -> Matrix:
    """``M_n ... M_2`` in closed form from ``s_n = prod q_i`` and ``t_n = prod r_i``."""
    if n < 2:
        raise ValueError("the product starts at level 2")
    s = math.prod(spec.q(i) for i in range(2, n + 1))
    t = math.prod(spec.r(i) for i in range(2, n + 1))
    a, b = (s + t) // 2, (s - t) // 2
    return ((a, b), (b, a))


def two_symmetric_product_iterated(spec: TwoSymmetricSpec, n: int) -> Matrix:
    out = spec.matrix(2)
    for i in range(3, n + 1):
        out = matmul(spec.matrix(i), out)
    return out


@dataclass(frozen=True)
class AlphaReport:
    partial: Fraction
    reciprocal: Fraction
    divergent: Decision

    def to_json(self) -> dict:
        f = lambda x: f"{x.numerator}/{x.denominator}"
        return {"partial": f(self.partial), "reciprocal": f(self.reciprocal),
                "divergent": self.divergent.to_json()}


def _divergence(spec: TwoSymmetricSpec) -> Decision:
    if not spec.tail:
        return Decision.unknown(len(spec.pairs) + 1)
    ratio = math.prod(Fraction(l + k, l - k) for l, k in spec.tail)
    return Decision.YES if ratio > 1 else Decision.NO


def two_symmetric_alpha(spec: TwoSymmetricSpec, n: int) -> AlphaReport:
    """Partial product ``prod_{i=2}^n q_i / r_i`` and whether the full product diverges.

    A tail settles the question: the product over one tail period is the
    growth factor per period.  Without a tail the answer is unknown.
    """
    if n < 2:
        raise ValueError("the product starts at level 2")
    partial = math.prod(Fraction(spec.q(i), spec.r(i)) for i in range(2, n + 1))
    return AlphaReport(partial, 1 / partial, _divergence(spec))


def two_symmetric_tau(spec: TwoSymmetricSpec, g: K0Element, assume_unique_state: bool = False) -> Fraction:
    """The unique trace ``tau(v) = (1, 1) . v / (q_1 ... q_n)`` with ``q_1 = 2``.

    Only meaningful when the product of ``q_i / r_i`` diverges; otherwise
    there are two extreme states and no single answer.
    """
    if g.level > spec.known_depth:
        raise LevelBeyondSpec(f"element lives at level {g.level}, spec stops at {spec.known_depth}")
    if not (_divergence(spec).is_yes or assume_unique_state):
        raise UncertifiedRegime("divergence of the q/r product is not certified")
    if g.level == 0:
        if len(g.vector) != 1:
            raise ValueError("level 0 has a single vertex")
        return Fraction(g.vector[0])
    if len(g.vector) != 2:
        raise ValueError("2-symmetric levels have two vertices")
    return Fraction(sum(g.vector), math.prod(spec.q(i) for i in range(1, g.level + 1)))
