"""Edge orders, the lexicographic (Vershik) map, and the odometer readout.

An edge into vertex ``v`` of ``V_n`` is addressed by a slot
``(source, copy)``: the source vertex in ``V_{n-1}`` and which of the
parallel edges it is.  An ordering lists the slots of every vertex from
minimal to maximal.  Paths into ``v`` are then ordered lexicographically
with the top edge most significant, which makes each vertex a tower whose
floors are numbered ``0 .. height - 1``.
"""

from __future__ import annotations

import bisect
import string
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .decision import Decision
from .diagram import BratteliDiagram, count_paths, ers_sum, max_unroll, remainder_after, _check_cuts
from .errors import (
    InvalidOrder,
    InvalidPath,
    MaxOfTower,
    MinOfTower,
    RankOutOfBounds,
)

Slot = tuple[int, int]
VertexOrders = tuple[tuple[Slot, ...], ...]


def left_right(matrix) -> VertexOrders:
    """Slots sorted by source, parallel copies adjacent."""
    return tuple(
        tuple((s, c) for s, mult in enumerate(row) for c in range(mult))
        for row in matrix
    )


def _check_orders(matrix, orders: VertexOrders, label: str) -> None:
    if len(orders) != len(matrix):
        raise InvalidOrder(f"{label}: {len(orders)} order lists for {len(matrix)} vertices")
    for v, (row, slots) in enumerate(zip(matrix, orders)):
        expected = sorted((s, c) for s, mult in enumerate(row) for c in range(mult))
        if sorted(slots) != expected:
            raise InvalidOrder(f"{label}, vertex {v}: slots do not match row {list(row)}")


def default_alphabet(size: int) -> tuple[str, ...]:
    if size <= 26:
        return tuple(string.ascii_lowercase[:size])
    return tuple(str(i) for i in range(size))


@dataclass(frozen=True)
class OrderedDiagram:
    """A diagram with a total order on the incoming slots of every vertex.

    ``orders[n-1][v]`` is the order list at an explicit level ``n``;
    ``tail_orders`` repeats with the tail.  ``alphabet`` labels the edges of
    ``E_1`` in slot order (vertex by vertex, copies in order).
    """

    diagram: BratteliDiagram
    orders: tuple[VertexOrders, ...] = None
    tail_orders: tuple[VertexOrders, ...] = None
    alphabet: tuple[str, ...] = None

    def __post_init__(self):
        d = self.diagram
        orders = self.orders
        if orders is None:
            orders = tuple(left_right(m) for m in d.levels)
        tail_orders = self.tail_orders
        if tail_orders is None:
            tail_orders = tuple(left_right(m) for m in d.tail)
        orders = tuple(tuple(tuple((int(s), int(c)) for s, c in vs) for vs in lv) for lv in orders)
        tail_orders = tuple(tuple(tuple((int(s), int(c)) for s, c in vs) for vs in lv) for lv in tail_orders)
        if len(orders) != len(d.levels) or len(tail_orders) != len(d.tail):
            raise InvalidOrder("one order entry per level is required")
        for n, (m, o) in enumerate(zip(d.levels, orders), 1):
            _check_orders(m, o, f"level {n}")
        for j, (m, o) in enumerate(zip(d.tail, tail_orders)):
            _check_orders(m, o, f"tail level {j}")
        edges1 = sum(row[0] for row in d.levels[0])
        alphabet = self.alphabet
        if alphabet is None:
            alphabet = default_alphabet(edges1)
        alphabet = tuple(str(a) for a in alphabet)
        if len(alphabet) != edges1:
            raise InvalidOrder(f"alphabet has {len(alphabet)} labels for {edges1} edges in E_1")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "tail_orders", tail_orders)
        object.__setattr__(self, "alphabet", alphabet)

    def order(self, n: int, v: int) -> tuple[Slot, ...]:
        t = self.diagram.tail_index(n)
        self.diagram.matrix(n)  # range check
        lv = self.orders[n - 1] if t is None else self.tail_orders[t]
        return lv[v]

    def is_left_right(self) -> bool:
        d = self.diagram
        return (all(o == left_right(m) for m, o in zip(d.levels, self.orders))
                and all(o == left_right(m) for m, o in zip(d.tail, self.tail_orders)))

    def symbol_index(self, v: int, copy: int) -> int:
        """Alphabet index of the ``copy``-th edge from ``v_0`` into ``v`` in ``V_1``."""
        m1 = self.diagram.levels[0]
        return sum(row[0] for row in m1[:v]) + copy

    def __repr__(self):
        return f"OrderedDiagram({self.diagram!r})"


def order_left_right(diagram: BratteliDiagram, alphabet: Sequence[str] | None = None) -> OrderedDiagram:
    return OrderedDiagram(diagram, alphabet=None if alphabet is None else tuple(alphabet))


# -- paths and ranks -----------------------------------------------------------

class Edge(NamedTuple):
    range: int
    source: int
    copy: int


@dataclass(frozen=True)
class FinitePath:
    """Edges ``e_1 .. e_n`` from ``v_0``; ``edges[i]`` lies in ``E_{i+1}``."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))

    @property
    def level(self) -> int:
        return len(self.edges)

    @property
    def vertex(self) -> int:
        return self.edges[-1].range if self.edges else 0

    def prefix(self, n: int) -> FinitePath:
        return FinitePath(self.edges[:n])


@dataclass(frozen=True)
class PathRank:
    level: int
    vertex: int
    rank: int


def tower_height(ordered: OrderedDiagram, n: int, v: int) -> int:
    return count_paths(ordered.diagram, n)[v]


@lru_cache(maxsize=None)
def _slot_table(ordered: OrderedDiagram, n: int, v: int):
    """(position of each slot, cumulative tower offsets) for vertex ``v`` at ``n``."""
    slots = ordered.order(n, v)
    heights = count_paths(ordered.diagram, n - 1)
    pos = {s: i for i, s in enumerate(slots)}
    offsets = [0]
    for s, _ in slots:
        offsets.append(offsets[-1] + heights[s])
    return pos, offsets


def _validate_path(ordered: OrderedDiagram, path: FinitePath) -> None:
    prev = 0
    for i, e in enumerate(path.edges, 1):
        m = ordered.diagram.matrix(i)
        if not (0 <= e.range < len(m)) or e.source != prev:
            raise InvalidPath(f"edge {i} does not chain: {e}")
        if not (0 <= e.copy < m[e.range][e.source]):
            raise InvalidPath(f"edge {i} has no copy {e.copy}: {e}")
        prev = e.range


def rank_of(ordered: OrderedDiagram, path: FinitePath) -> PathRank:
    """Lexicographic position of ``path`` among the paths into its end vertex."""
    if path.level < 1:
        raise InvalidPath("paths have at least one edge")
    _validate_path(ordered, path)
    rank = 0
    for n, e in enumerate(path.edges, 1):
        pos, offsets = _slot_table(ordered, n, e.range)
        rank += offsets[pos[(e.source, e.copy)]]
    return PathRank(path.level, path.vertex, rank)


def path_of_rank(ordered: OrderedDiagram, pr: PathRank) -> FinitePath:
    """Inverse of :func:`rank_of`."""
    n, v, r = pr.level, pr.vertex, pr.rank
    if n < 1 or not (0 <= v < ordered.diagram.num_vertices(n)):
        raise RankOutOfBounds(f"no vertex {v} at level {n}")
    if not (0 <= r < tower_height(ordered, n, v)):
        raise RankOutOfBounds(f"rank {r} outside tower of height {tower_height(ordered, n, v)}")
    edges = []
    for lvl in range(n, 0, -1):
        _, offsets = _slot_table(ordered, lvl, v)
        i = bisect.bisect_right(offsets, r) - 1
        s, c = ordered.order(lvl, v)[i]
        edges.append(Edge(v, s, c))
        r -= offsets[i]
        v = s
    return FinitePath(tuple(reversed(edges)))


def _extreme_path_into(ordered: OrderedDiagram, n: int, v: int, which: int) -> list[Edge]:
    """All-min (``which=0``) or all-max (``which=-1``) path from ``v_0`` to ``v``."""
    edges = []
    for lvl in range(n, 0, -1):
        s, c = ordered.order(lvl, v)[which]
        edges.append(Edge(v, s, c))
        v = s
    return edges[::-1]


def successor_path(ordered: OrderedDiagram, path: FinitePath) -> FinitePath:
    """Lexicographic successor among paths into the same vertex.

    Finds the lowest edge that is not maximal, replaces it by the next slot
    and resets everything below to the minimal path into that slot's source.
    """
    _validate_path(ordered, path)
    edges = list(path.edges)
    for k, e in enumerate(edges, 1):
        slots = ordered.order(k, e.range)
        i = slots.index((e.source, e.copy))
        if i + 1 < len(slots):
            s, c = slots[i + 1]
            return FinitePath(tuple(_extreme_path_into(ordered, k - 1, s, 0))
                              + (Edge(e.range, s, c),) + tuple(edges[k:]))
    raise MaxOfTower(f"path is maximal into vertex {path.vertex} at level {path.level}")


def predecessor_path(ordered: OrderedDiagram, path: FinitePath) -> FinitePath:
    _validate_path(ordered, path)
    edges = list(path.edges)
    for k, e in enumerate(edges, 1):
        slots = ordered.order(k, e.range)
        i = slots.index((e.source, e.copy))
        if i > 0:
            s, c = slots[i - 1]
            return FinitePath(tuple(_extreme_path_into(ordered, k - 1, s, -1))
                              + (Edge(e.range, s, c),) + tuple(edges[k:]))
    raise MinOfTower(f"path is minimal into vertex {path.vertex} at level {path.level}")


def _check_rank(ordered: OrderedDiagram, pr: PathRank) -> int:
    if pr.level < 1 or not (0 <= pr.vertex < ordered.diagram.num_vertices(pr.level)):
        raise RankOutOfBounds(f"no vertex {pr.vertex} at level {pr.level}")
    h = tower_height(ordered, pr.level, pr.vertex)
    if not (0 <= pr.rank < h):
        raise RankOutOfBounds(f"rank {pr.rank} outside tower of height {h}")
    return h


def successor(ordered: OrderedDiagram, pr: PathRank) -> PathRank:
    """Next floor of the same tower; ``MaxOfTower`` at the top floor."""
    h = _check_rank(ordered, pr)
    if pr.rank == h - 1:
        raise MaxOfTower(f"top of tower {pr.vertex} at level {pr.level}")
    return PathRank(pr.level, pr.vertex, pr.rank + 1)


def predecessor(ordered: OrderedDiagram, pr: PathRank) -> PathRank:
    _check_rank(ordered, pr)
    if pr.rank == 0:
        raise MinOfTower(f"bottom of tower {pr.vertex} at level {pr.level}")
    return PathRank(pr.level, pr.vertex, pr.rank - 1)


# -- extreme paths and proper ordering ----------------------------------------

def _backward_image(ordered: OrderedDiagram, lo: int, hi: int, which: int,
                    start: set[int] | None = None) -> set[int]:
    """Vertices of ``V_lo`` reached from ``V_hi`` by following extreme slots down."""
    d = ordered.diagram
    cur = set(range(d.num_vertices(hi))) if start is None else set(start)
    for lvl in range(hi, lo, -1):
        cur = {ordered.order(lvl, v)[which][0] for v in cur}
    return cur


def _lookahead(ordered: OrderedDiagram, n: int) -> int:
    d = ordered.diagram
    if not d.has_tail:
        return d.prefix_length
    widest = max(len(m) for m in d.tail)
    return min(max(n, d.prefix_length) + d.period * (widest + 1), max(max_unroll(), n))


@dataclass(frozen=True)
class ExtremePath:
    path: FinitePath
    vertex: int
    ambiguous: bool


def _extreme_path(ordered: OrderedDiagram, n: int, which: int) -> ExtremePath:
    hi = max(_lookahead(ordered, n), n)
    cands = _backward_image(ordered, n, hi, which)
    v = min(cands)
    return ExtremePath(FinitePath(tuple(_extreme_path_into(ordered, n, v, which))), v, len(cands) > 1)


def min_path(ordered: OrderedDiagram, n: int) -> ExtremePath:
    """Prefix of the all-minimal infinite path up to level ``n``.

    The terminal vertex is found by following minimal slots down from far
    below level ``n``; with a tail the candidate set stabilises within
    ``|V|`` periods, so the lookahead is exact.  If several vertices
    survive, the lowest index is returned with ``ambiguous=True``.
    """
    return _extreme_path(ordered, n, 0)


def max_path(ordered: OrderedDiagram, n: int) -> ExtremePath:
    return _extreme_path(ordered, n, -1)


def _stable_tail_image(ordered: OrderedDiagram, which: int) -> set[int]:
    d = ordered.diagram
    L, P = d.prefix_length, d.period
    cur = set(range(d.num_vertices(L + P)))
    while True:
        nxt = _backward_image(ordered, L, L + P, which, cur)
        if nxt == cur:
            return cur
        cur = nxt


def is_properly_ordered(ordered: OrderedDiagram, depth: int) -> Decision:
    """Whether there is exactly one all-min and one all-max infinite path.

    With a tail this is decided exactly: the composition of extreme-slot
    maps over one period is iterated to its stable image, whose size is the
    number of infinite extreme paths.  Without a tail we look for a level
    in ``1 .. depth-1`` onto which all vertices at level ``depth`` contract.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    d = ordered.diagram
    if d.has_tail:
        sizes = [len(_stable_tail_image(ordered, w)) for w in (0, -1)]
        return Decision.YES if max(sizes) == 1 else Decision.NO
    top = min(depth, d.prefix_length)
    for which in (0, -1):
        if not any(len(_backward_image(ordered, lo, top, which)) == 1 for lo in range(1, top)):
            return Decision.unknown(depth)
    return Decision.YES


# -- odometer factor -----------------------------------------------------------

def factor_to_odometer(ordered: OrderedDiagram, path: FinitePath) -> tuple[int, ...]:
    """Position of each edge within its vertex's order list.

    Under ERS these are mixed-radix digits with bases ``r_1, r_2, ...``
    and the path's rank is ``sum(digit_n * r_1 ... r_{n-1})``.
    """
    _validate_path(ordered, path)
    digits = []
    for n, e in enumerate(path.edges, 1):
        ers_sum(ordered.diagram, n)
        digits.append(ordered.order(n, e.range).index((e.source, e.copy)))
    return tuple(digits)


def odometer_increment(digits: Sequence[int], bases: Sequence[int]) -> tuple[int, ...] | None:
    """Add one with carry; None on overflow past the last digit."""
    out = list(digits)
    for i, b in enumerate(bases):
        out[i] += 1
        if out[i] < b:
            return tuple(out)
        out[i] = 0
    return None


# -- telescoping an ordered diagram --------------------------------------------

def _window_orders(ordered: OrderedDiagram, lo: int, hi: int) -> VertexOrders:
    """Induced lexicographic order on paths ``V_lo -> V_hi`` as slots."""
    seqs = [[u] for u in range(ordered.diagram.num_vertices(lo))]
    for lvl in range(lo + 1, hi + 1):
        nv = ordered.diagram.num_vertices(lvl)
        seqs = [[u for s, _ in ordered.order(lvl, v) for u in seqs[s]] for v in range(nv)]
    out = []
    for seq in seqs:
        seen: dict[int, int] = {}
        slots = []
        for u in seq:
            slots.append((u, seen.get(u, 0)))
            seen[u] = seen.get(u, 0) + 1
        out.append(tuple(slots))
    return tuple(out)


def telescope_ordered(ordered: OrderedDiagram, cuts: Sequence[int]) -> OrderedDiagram:
    """Telescope and carry the induced lexicographic order along."""
    from .diagram import telescope

    d = ordered.diagram
    cuts = _check_cuts(d, cuts)
    new_d = telescope(d, cuts)
    orders = []
    prev = 0
    for c in cuts:
        if c == prev + 1:
            orders.append(ordered.orders[c - 1] if c <= d.prefix_length
                          else ordered.tail_orders[d.tail_index(c)])
        else:
            orders.append(_window_orders(ordered, prev, c))
        prev = c
    rest, _ = remainder_after(d, prev)
    orders += [ordered.orders[n] for n in range(prev, d.prefix_length)]
    tail_orders = ordered.tail_orders
    if tail_orders and prev > d.prefix_length:
        k = (prev - d.prefix_length) % len(tail_orders)
        tail_orders = tail_orders[k:] + tail_orders[:k]
    alphabet = None
    if cuts[0] == 1:
        alphabet = ordered.alphabet
    return OrderedDiagram(new_d, tuple(orders), tail_orders, alphabet)
