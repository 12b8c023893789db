"""Toeplitz sequences read off an ERS-ordered Bratteli diagram.

The sequence is ``eta(j) = tau_1(T^j x_min)``: the first edge of the
``j``-th iterate of the minimal path.  Under ERS every tower at level ``n``
has the same height ``p_n``, so position ``j`` always sits on floor
``j mod p_n`` of some level-``n`` tower.  That turns the periodic parts
``Per_p(eta)`` into a row-by-row comparison of finitely many tower words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .decision import Decision
from .diagram import count_paths, max_unroll, require_ers, tower_height
from .errors import (
    DepthExhausted,
    MaxOfTower,
    MinOfTower,
    NotProperlyOrdered,
    SkeletonMismatch,
    WindowTooShort,
)
from .ordering import (
    FinitePath,
    OrderedDiagram,
    is_properly_ordered,
    max_path,
    min_path,
    predecessor_path,
    successor_path,
)

DEFAULT_DEPTH = 32


@dataclass(frozen=True)
class SymbolWindow:
    """``eta`` restricted to ``offset .. offset + len(symbols) - 1``."""

    offset: int
    symbols: tuple[int, ...]
    alphabet: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("a window holds at least one symbol")

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, j: int) -> int:
        """Symbol at absolute position ``j``."""
        i = j - self.offset
        if not 0 <= i < len(self.symbols):
            raise IndexError(f"position {j} outside window")
        return self.symbols[i]

    @property
    def positions(self) -> range:
        return range(self.offset, self.offset + len(self.symbols))

    def text(self, sep: str | None = None) -> str:
        labels = [self.alphabet[s] for s in self.symbols]
        if sep is None:
            sep = "" if all(len(a) == 1 for a in self.alphabet) else " "
        return sep.join(labels)


# -- tower words ---------------------------------------------------------------

@lru_cache(maxsize=256)
def _tower_words(ordered: OrderedDiagram, n: int) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return tuple(
            tuple(ordered.symbol_index(v, c) for _, c in ordered.order(1, v))
            for v in range(ordered.diagram.num_vertices(1))
        )
    below = _tower_words(ordered, n - 1)
    return tuple(
        tuple(x for s, _ in ordered.order(n, v) for x in below[s])
        for v in range(ordered.diagram.num_vertices(n))
    )


def tower_words(ordered: OrderedDiagram, n: int) -> tuple[tuple[int, ...], ...]:
    """First-edge symbols along every tower of level ``n``, floor by floor."""
    for k in range(1, n, 200):  # keep recursion shallow
        _tower_words(ordered, k)
    return _tower_words(ordered, n)


def tower_word(ordered: OrderedDiagram, n: int, v: int) -> SymbolWindow:
    return SymbolWindow(0, tower_words(ordered, n)[v], ordered.alphabet)


# -- the sequence --------------------------------------------------------------

def _require_proper(ordered: OrderedDiagram, depth: int) -> None:
    require_ers(ordered.diagram)
    dec = is_properly_ordered(ordered, depth)
    if not dec.is_yes:
        raise NotProperlyOrdered(dec)


def working_level(ordered: OrderedDiagram, N: int) -> int:
    """Smallest level whose towers are taller than ``N``."""
    d = ordered.diagram
    n, p = 1, tower_height(d, 1)
    while p <= N:
        n += 1
        if n > d.known_depth or n > max_unroll():
            raise DepthExhausted(f"no level with tower height above {N} (stopped at level {n - 1})")
        p = tower_height(d, n)
        if n > 1 and p == tower_height(d, n - 1) and d.has_tail and n > d.prefix_length + d.period:
            raise DepthExhausted("tower heights stopped growing")
    return n


def generate_window(ordered: OrderedDiagram, N: int, depth: int = DEFAULT_DEPTH) -> SymbolWindow:
    """``eta`` on ``[-N, N]`` from the two extreme towers.

    Nonnegative positions climb the tower holding ``x_min``; negative ones
    come down the tower holding ``x_max``, which precedes ``x_min``.
    """
    if N < 0:
        raise ValueError("window radius is nonnegative")
    _require_proper(ordered, depth)
    n = working_level(ordered, N)
    p = tower_height(ordered.diagram, n)
    words = tower_words(ordered, n)
    up = words[min_path(ordered, n).vertex]
    down = words[max_path(ordered, n).vertex]
    return SymbolWindow(-N, tuple(down[p - N:]) + tuple(up[: N + 1]), ordered.alphabet)


def generate_window_iterative(ordered: OrderedDiagram, N: int) -> SymbolWindow:
    """Same window by stepping the Vershik map edge by edge.

    Whenever a step runs off the top (or bottom) of a tower the current
    path is extended one level along the extreme path and the step is
    retried.  Kept as an independent check of :func:`generate_window`.
    """
    _require_proper(ordered, DEFAULT_DEPTH)

    def walk(start: FinitePath, step, extend, count: int) -> list[int]:
        path, out = start, []
        for _ in range(count):
            while True:
                try:
                    path = step(ordered, path)
                    break
                except (MaxOfTower, MinOfTower):
                    path = extend(path.level + 1, path)
            e = path.edges[0]
            out.append(ordered.symbol_index(e.range, e.copy))
        return out

    def extend_with(which):
        # T^j x agrees with x below the level where the orbit currently lives
        def extend(level, path):
            e = which(ordered, level).path.edges[-1]
            if e.source != path.vertex:
                raise DepthExhausted("extreme path does not continue the current path")
            return FinitePath(path.edges + (e,))
        return extend

    x_min = min_path(ordered, 1).path
    x_max = max_path(ordered, 1).path
    e0 = x_min.edges[0]
    forward = [ordered.symbol_index(e0.range, e0.copy)]
    forward += walk(x_min, successor_path, extend_with(min_path), N)
    em = x_max.edges[0]
    backward = [ordered.symbol_index(em.range, em.copy)] if N else []
    backward += walk(x_max, predecessor_path, extend_with(max_path), N - 1) if N > 1 else []
    return SymbolWindow(-N, tuple(reversed(backward)) + tuple(forward), ordered.alphabet)


# -- periodic parts ------------------------------------------------------------

@dataclass(frozen=True)
class Skeleton:
    """The ``p``-skeleton: a letter where ``eta`` is ``p``-periodic, None (``*``) elsewhere."""

    period: int
    letters: tuple[int | None, ...]
    alphabet: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.letters) != self.period:
            raise ValueError("skeleton length must equal its period")

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(a for a, x in enumerate(self.letters) if x is not None)

    def per_letter(self, sigma: int) -> tuple[int, ...]:
        return tuple(a for a, x in enumerate(self.letters) if x == sigma)

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.offsets), self.period)

    def text(self) -> str:
        return "".join("*" if x is None else self.alphabet[x] for x in self.letters)


def per_set(ordered: OrderedDiagram, i: int, depth: int = DEFAULT_DEPTH) -> Skeleton:
    """Exact ``p_i``-skeleton of the bi-infinite sequence.

    Floor ``a`` carries a letter iff every level-``i`` tower shows that
    letter on floor ``a``; every tower is visited by the orbit, so this is
    ``Per_{p_i}(eta)`` on all of ``Z``.
    """
    _require_proper(ordered, depth)
    words = tower_words(ordered, i)
    letters = tuple(col[0] if len(set(col)) == 1 else None for col in zip(*words))
    return Skeleton(len(letters), letters, ordered.alphabet)


def _divisors(p: int) -> list[int]:
    small = [q for q in range(1, math.isqrt(p) + 1) if p % q == 0]
    return sorted(set(small + [p // q for q in small]))


def is_essential(sk: Skeleton) -> bool:
    """No smaller period of the skeleton (``*`` compared as a letter).

    Only proper divisors of ``p`` need checking: a ``p``-periodic sequence
    with period ``q`` also has period ``gcd(p, q)``.  An empty skeleton
    carries no periodic part and is not counted as essential.
    """
    if not sk.offsets:
        return False
    p = sk.period
    for q in _divisors(p):
        if q < p and all(sk.letters[a] == sk.letters[(a + q) % p] for a in range(p)):
            return False
    return True


def brute_force_per_offsets(window: SymbolWindow, p: int) -> set[int]:
    """Residues ``a`` mod ``p`` where the window is constant along ``a + pZ``."""
    seen: dict[int, set[int]] = {}
    for j in window.positions:
        seen.setdefault(j % p, set()).add(window[j])
    return {a for a, s in seen.items() if len(s) == 1}


@dataclass(frozen=True)
class PeriodEntry:
    level: int
    period: int
    offsets: tuple[int, ...]
    density: Fraction
    essential: bool


@dataclass(frozen=True)
class PeriodReport:
    entries: tuple[PeriodEntry, ...]
    coverage: Decision
    uncovered: tuple[int, ...]
    limit_estimate: Fraction
    certified_regular: Decision = field(default=None)

    def to_json(self) -> dict:
        return {
            "levels": [
                {"i": e.level, "p": e.period, "per": list(e.offsets),
                 "d": _frac(e.density), "essential": e.essential}
                for e in self.entries
            ],
            "coverage": str(self.coverage),
            "uncovered": list(self.uncovered),
            "d_estimate": _frac(self.limit_estimate),
            "regular": str(self.certified_regular),
        }


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def periodic_structure(ordered: OrderedDiagram, depth: int) -> PeriodReport:
    """Skeletons, densities and essential flags for levels ``1 .. depth``.

    Coverage is ``YES`` only when the deepest skeleton has no ``*``; then
    ``eta`` is periodic and every position is covered.  Otherwise the
    uncovered residues mod ``p_depth`` are reported.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    _require_proper(ordered, max(depth, DEFAULT_DEPTH))
    entries = []
    for i in range(1, depth + 1):
        sk = per_set(ordered, i, max(depth, DEFAULT_DEPTH))
        entries.append(PeriodEntry(i, sk.period, sk.offsets, sk.density, is_essential(sk)))
    last = entries[-1]
    covered = set(last.offsets)
    uncovered = tuple(a for a in range(last.period) if a not in covered)
    full = any(e.density == 1 for e in entries)
    return PeriodReport(
        tuple(entries),
        Decision.YES if not uncovered else Decision.unknown(depth),
        uncovered,
        last.density,
        Decision.YES if full else Decision.unknown(depth),
    )


def verify_toeplitz_window(ordered: OrderedDiagram, N: int, depth: int) -> Fraction:
    """Fraction of ``[-N, N]`` lying in some ``Per_{p_i}``, ``i <= depth``.

    Each covered position is checked against the skeleton letter; a
    disagreement means the tower computation is broken.
    """
    window = generate_window(ordered, N, max(depth, DEFAULT_DEPTH))
    skeletons = [per_set(ordered, i, max(depth, DEFAULT_DEPTH)) for i in range(1, depth + 1)]
    covered = 0
    for j in window.positions:
        hit = False
        for sk in skeletons:
            letter = sk.letters[j % sk.period]
            if letter is None:
                continue
            if letter != window[j]:
                raise SkeletonMismatch(
                    f"position {j}: window has {window[j]}, {sk.period}-skeleton has {letter}"
                )
            hit = True
        covered += hit
    return Fraction(covered, len(window))


# -- complexity and entropy ----------------------------------------------------

def word_complexity(window: SymbolWindow | Sequence[int], m: int) -> int:
    """Number of distinct length-``m`` factors."""
    symbols = window.symbols if isinstance(window, SymbolWindow) else tuple(window)
    if m < 1:
        raise ValueError("factor length must be positive")
    if m > len(symbols):
        raise WindowTooShort(f"window of length {len(symbols)} has no factors of length {m}")
    return len({symbols[i:i + m] for i in range(len(symbols) - m + 1)})


def empirical_entropy(window: SymbolWindow, m: int) -> float:
    """``ln(complexity(m)) / m``.

    Biased low as an estimate of topological entropy: a finite window
    misses words.  Requires a window at least ``4m`` long.
    """
    if len(window) < 4 * m:
        raise WindowTooShort(f"need a window of length >= {4 * m}, got {len(window)}")
    return math.log(word_complexity(window, m)) / m


@dataclass(frozen=True)
class EntropyBound:
    """Upper bounds on ``(1/m) ln |B_m|`` from concatenations of tower words.

    ``exponent`` is ``m/l + 3`` with ``l`` the shortest tower word, giving
    ``|B_m| <= k**exponent``; ``rate = exponent / m`` multiplies ``ln k``.
    That count forgets where a factor starts inside its first tower word.
    ``offset_value`` adds the ``ln(longest) / m`` term for that choice and
    is the bound that holds for every ``m``.  Both tend to ``ln(k) / l``.
    """

    k: int
    l: int
    longest: int
    m: int
    exponent: Fraction
    rate: Fraction

    @property
    def value(self) -> float:
        return float(self.rate) * math.log(self.k)

    @property
    def offset_value(self) -> float:
        return self.value + math.log(self.longest) / self.m

    @property
    def limit_rate(self) -> Fraction:
        return Fraction(1, self.l)


def entropy_upper_bound(ordered: OrderedDiagram, n: int, m: int) -> EntropyBound:
    """Concatenation bound for the words of level ``n`` and factor length ``m``."""
    if m < 1:
        raise ValueError("factor length must be positive")
    heights = count_paths(ordered.diagram, n)
    l = min(heights)
    exponent = Fraction(m, l) + 3
    return EntropyBound(len(heights), l, max(heights), m, exponent, exponent / m)
