"""Bratteli diagrams with exact integer incidence matrices.

A diagram is stored as a finite list of explicit incidence matrices followed
by an optional tail that repeats forever.  ``M_n`` has one row per vertex of
``V_n`` and one column per vertex of ``V_{n-1}``; entry ``(i, j)`` counts the
edges between them.  Levels are numbered from 1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .decision import Decision
from .errors import (
    CutsOutOfRange,
    DimensionMismatch,
    EmptyInput,
    NoTail,
    NotERS,
    NotIncreasing,
    UnrollLimitExceeded,
    ZeroColumn,
    ZeroRow,
)
from .supernatural import SupernaturalNumber

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_MAX_UNROLL = 10**6


def max_unroll() -> int:
    return int(os.environ.get("BV_MAX_UNROLL", DEFAULT_MAX_UNROLL))


# -- small exact linear algebra ------------------------------------------------

def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, bool) or int(x) != x:
                raise TypeError(f"matrix entries must be integers, got {x!r}")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _shape(m: Matrix) -> tuple[int, int]:
    return len(m), len(m[0]) if m else 0


def _check_matrix(m: Matrix, label: str) -> None:
    if not m or not m[0]:
        raise EmptyInput(f"{label}: empty matrix")
    width = len(m[0])
    for i, row in enumerate(m):
        if len(row) != width:
            raise DimensionMismatch(f"{label}: ragged matrix (row {i})")
        if any(x < 0 for x in row):
            raise ValueError(f"{label}: negative entry in row {i}")
        if not any(row):
            raise ZeroRow(f"{label}: row {i} has no edges")
    for j in range(width):
        if not any(row[j] for row in m):
            raise ZeroColumn(f"{label}: column {j} has no edges")


# -- the diagram ---------------------------------------------------------------

@dataclass(frozen=True)
class BratteliDiagram:
    """Explicit levels ``M_1..M_L`` plus a tail repeated forever.

    Validation happens on construction: the first matrix has one column,
    consecutive matrices chain, every vertex has an incoming and an outgoing
    edge, and the tail closes up on itself.
    """

    levels: tuple[Matrix, ...]
    tail: tuple[Matrix, ...] = ()

    def __post_init__(self):
        levels = tuple(as_matrix(m) for m in self.levels)
        tail = tuple(as_matrix(m) for m in (self.tail or ()))
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "tail", tail)
        if not levels:
            raise EmptyInput("a diagram needs at least one level")
        for n, m in enumerate(levels, 1):
            _check_matrix(m, f"level {n}")
        for j, m in enumerate(tail):
            _check_matrix(m, f"tail matrix {j}")
        if _shape(levels[0])[1] != 1:
            raise DimensionMismatch("the first matrix must have exactly one column")
        chain = list(levels) + list(tail)
        for n in range(1, len(chain)):
            if _shape(chain[n])[1] != _shape(chain[n - 1])[0]:
                raise DimensionMismatch(
                    f"level {n + 1} has {_shape(chain[n])[1]} columns but level {n} "
                    f"has {_shape(chain[n - 1])[0]} rows"
                )
        if tail and _shape(tail[0])[1] != _shape(tail[-1])[0]:
            raise DimensionMismatch("tail does not close up: last rows != first columns")

    # level access

    @property
    def has_tail(self) -> bool:
        return bool(self.tail)

    @property
    def prefix_length(self) -> int:
        return len(self.levels)

    @property
    def period(self) -> int:
        return len(self.tail)

    @property
    def known_depth(self) -> int | float:
        """Last level that exists; infinite when there is a tail."""
        return float("inf") if self.tail else len(self.levels)

    def _check_level(self, n: int) -> None:
        if n < 1:
            raise CutsOutOfRange(f"levels start at 1, got {n}")
        if n > self.known_depth:
            raise CutsOutOfRange(f"level {n} is beyond the last level {len(self.levels)}")
        if n > max_unroll():
            raise UnrollLimitExceeded(f"level {n} exceeds BV_MAX_UNROLL={max_unroll()}")

    def tail_index(self, n: int) -> int | None:
        """Index into ``tail`` of level ``n``, or None for an explicit level."""
        if n <= len(self.levels):
            return None
        return (n - len(self.levels) - 1) % len(self.tail)

    def matrix(self, n: int) -> Matrix:
        """``M_n``, unrolling the tail when needed."""
        self._check_level(n)
        t = self.tail_index(n)
        return self.levels[n - 1] if t is None else self.tail[t]

    def num_vertices(self, n: int) -> int:
        if n == 0:
            return 1
        return len(self.matrix(n))

    def product(self, lo: int, hi: int) -> Matrix:
        """``M_hi ... M_{lo+1}``: edges-paths from ``V_lo`` to ``V_hi``."""
        if hi < lo:
            raise ValueError("need lo <= hi")
        if hi == lo:
            return identity(self.num_vertices(lo))
        acc = self.matrix(lo + 1)
        for n in range(lo + 2, hi + 1):
            acc = matmul(self.matrix(n), acc)
        return acc

    def __repr__(self):
        return f"BratteliDiagram(levels={len(self.levels)}, tail={len(self.tail)})"


def new_diagram(matrices: Sequence, tail: Sequence | None = None) -> BratteliDiagram:
    """Build and validate a diagram from nested integer lists."""
    if not matrices:
        raise EmptyInput("list of matrices is empty")
    return BratteliDiagram(tuple(matrices), tuple(tail or ()))


# -- telescoping ---------------------------------------------------------------

def _check_cuts(diagram: BratteliDiagram, cuts: Sequence[int]) -> list[int]:
    cuts = [int(c) for c in cuts]
    if not cuts:
        raise CutsOutOfRange("need at least one cut")
    if cuts[0] < 1:
        raise CutsOutOfRange("cuts start above level 0")
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise NotIncreasing(f"cuts must be strictly increasing: {cuts}")
    if cuts[-1] > diagram.known_depth:
        raise CutsOutOfRange(f"cut {cuts[-1]} beyond last level {diagram.prefix_length}")
    if cuts[-1] > max_unroll():
        raise UnrollLimitExceeded(f"cut {cuts[-1]} exceeds BV_MAX_UNROLL={max_unroll()}")
    return cuts


def remainder_after(diagram: BratteliDiagram, cut: int) -> tuple[list[Matrix], tuple[Matrix, ...]]:
    """Levels strictly after ``cut``, as (explicit list, rotated tail)."""
    rest = list(diagram.levels[cut:])
    tail = diagram.tail
    if tail and cut > diagram.prefix_length:
        k = (cut - diagram.prefix_length) % len(tail)
        tail = tail[k:] + tail[:k]
    return rest, tail


def telescope(diagram: BratteliDiagram, cuts: Sequence[int]) -> BratteliDiagram:
    """Compose the levels between consecutive cuts.

    With cuts ``m_1 < m_2 < ...`` the new level ``n`` matrix is
    ``M_{m_n} ... M_{m_{n-1}+1}`` (``m_0 = 0``).  Levels after the last cut
    are kept as they are, tail included.
    """
    cuts = _check_cuts(diagram, cuts)
    new = []
    prev = 0
    for c in cuts:
        new.append(diagram.product(prev, c))
        prev = c
    rest, tail = remainder_after(diagram, prev)
    return BratteliDiagram(tuple(new + rest), tail)


# -- simplicity ----------------------------------------------------------------

def _positive(m: Matrix) -> bool:
    return all(x > 0 for row in m for x in row)


def _bool_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(any(x and y for x, y in zip(row, col)) for col in cols) for row in a)


def _tail_is_primitive(diagram: BratteliDiagram) -> bool:
    """Whether some power of the tail period product is strictly positive.

    Uses Wielandt's bound: a primitive k x k boolean matrix has a positive
    power at exponent (k-1)**2 + 1, and a non-primitive one never does.
    """
    g = None
    for m in diagram.tail:
        b = tuple(tuple(x > 0 for x in row) for row in m)
        g = b if g is None else _bool_mul(b, g)
    k = len(g)
    e = (k - 1) ** 2 + 1
    result = None
    base = g
    while e:
        if e & 1:
            result = base if result is None else _bool_mul(base, result)
        base = _bool_mul(base, base)
        e >>= 1
    return all(all(row) for row in result)


def is_simple(diagram: BratteliDiagram, depth: int) -> Decision:
    """Search for a telescoping with strictly positive window products.

    Windows are at most ``depth`` levels long.  Positivity survives
    extending a window (no zero rows or columns), so from a cut ``a`` the
    admissible next cuts are ``first_positive(a) .. a + depth``.  With a
    tail, cut positions past the prefix fold onto their tail phase, which
    turns "infinitely many windows" into a finite reachability question.
    ``NO`` is only returned when the tail period product is not primitive.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    if diagram.has_tail and not _tail_is_primitive(diagram):
        return Decision.NO

    L = diagram.prefix_length
    P = diagram.period

    def first_positive(a: int) -> int | None:
        acc = None
        for b in range(a + 1, a + depth + 1):
            if b > diagram.known_depth:
                return None
            m = diagram.matrix(b)
            acc = m if acc is None else matmul(m, acc)
            if _positive(acc):
                return b
        return None

    if not diagram.has_tail:
        # every level of a finite diagram must be reachable as a cut
        reach = {0}
        for a in range(L):
            if a not in reach:
                continue
            f = first_positive(a)
            if f is not None:
                reach.update(range(f, min(a + depth, L) + 1))
        return Decision.YES if L in reach else Decision.unknown(depth)

    # states: explicit positions < L, then ("phase", k) for positions >= L
    def key(pos: int):
        return pos if pos < L else ("phase", (pos - L) % P)

    def rep(k) -> int:
        return k if isinstance(k, int) else L + k[1]

    start = key(0)
    graph: dict = {}
    stack = [start]
    while stack:
        s = stack.pop()
        if s in graph:
            continue
        a = rep(s)
        f = first_positive(a)
        succ = set()
        if f is not None:
            succ = {key(b) for b in range(f, a + depth + 1)}
        graph[s] = succ
        stack.extend(succ)

    # an infinite cut sequence exists iff a cycle is reachable from the start
    color: dict = {}

    def has_cycle(u) -> bool:
        color[u] = 1
        for v in graph[u]:
            c = color.get(v, 0)
            if c == 1 or (c == 0 and has_cycle(v)):
                return True
        color[u] = 2
        return False

    return Decision.YES if has_cycle(start) else Decision.unknown(depth)


# -- ERS -------------------------------------------------------------------------

@dataclass(frozen=True)
class RowSums:
    """Result of an ERS check.

    ``sums`` is None when some level has unequal row sums; ``violation``
    then names the first such level.  ``certified`` means every level of
    the infinite diagram was checked (possible only with a tail).
    """

    sums: tuple[int, ...] | None
    certified: bool
    violation: int | None = None

    def __bool__(self):
        return self.sums is not None


def _row_sum(m: Matrix) -> int | None:
    s = {sum(row) for row in m}
    return s.pop() if len(s) == 1 else None


def ers_row_sums(diagram: BratteliDiagram, depth: int | None = None) -> RowSums:
    """Constant row sums ``(r_1, ..., r_depth)`` if the diagram is ERS.

    Each explicit matrix and each tail matrix is checked once; that settles
    every level.  ``depth`` defaults to the prefix plus one tail period.
    """
    for n, m in enumerate(diagram.levels, 1):
        if _row_sum(m) is None:
            return RowSums(None, True, n)
    for j, m in enumerate(diagram.tail):
        if _row_sum(m) is None:
            return RowSums(None, True, diagram.prefix_length + j + 1)
    if depth is None:
        depth = diagram.prefix_length + diagram.period
    depth = min(depth, diagram.known_depth)
    sums = tuple(_row_sum(diagram.matrix(n)) for n in range(1, int(depth) + 1))
    return RowSums(sums, diagram.has_tail)


def require_ers(diagram: BratteliDiagram) -> None:
    res = ers_row_sums(diagram, 1)
    if not res:
        raise NotERS(f"row sums differ at level {res.violation}", res.violation)


def ers_sum(diagram: BratteliDiagram, n: int) -> int:
    """``r_n`` of an ERS diagram."""
    r = _row_sum(diagram.matrix(n))
    if r is None:
        raise NotERS(f"row sums differ at level {n}", n)
    return r


def tower_height(diagram: BratteliDiagram, n: int) -> int:
    """``p_n = r_1 ... r_n`` for an ERS diagram (``p_0 = 1``)."""
    p = 1
    for j in range(1, n + 1):
        p *= ers_sum(diagram, j)
    return p


def supernatural_of(diagram: BratteliDiagram) -> SupernaturalNumber:
    """The supernatural number ``prod r_n``; primes of tail sums recur forever."""
    res = ers_row_sums(diagram)
    if not res:
        raise NotERS(f"row sums differ at level {res.violation}", res.violation)
    if not diagram.has_tail:
        raise NoTail("a finite prefix does not determine the infinite product")
    L = diagram.prefix_length
    return SupernaturalNumber.of_sequence(res.sums[:L], res.sums[L:])


# -- path counts -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _count(diagram: BratteliDiagram, n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    return matvec(diagram.matrix(n), _count(diagram, n - 1))


def count_paths(diagram: BratteliDiagram, n: int) -> tuple[int, ...]:
    """Number of paths from ``v_0`` to each vertex of ``V_n``.

    Equals ``M_n ... M_1 (1)``; under ERS every entry is ``r_1 ... r_n``.
    """
    if n < 0:
        raise ValueError("levels are nonnegative")
    for k in range(0, n, 200):  # keep recursion shallow
        _count(diagram, k)
    return _count(diagram, n)
