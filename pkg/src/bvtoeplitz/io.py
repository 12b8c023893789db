"""JSON encoding of diagrams, ordered diagrams and dimension-group elements.

Diagrams look like::

    {"levels": [{"matrix": [[1], [1]]}, ...],
     "tail": {"repeat": [{"matrix": [[2, 1], [1, 2]]}]},
     "alphabet": ["a", "b"]}

A level may carry ``"order"``: ``"left-right"`` (the default) or, per
vertex, a list of ``[source, copy]`` pairs from minimal to maximal.
Floats are rejected everywhere.  :func:`dumps` is canonical, so equal
diagrams serialize to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .diagram import as_matrix, new_diagram
from .errors import BVError, InvalidDiagram, InvalidOrder
from .k0 import K0Element
from .ordering import OrderedDiagram, default_alphabet, left_right


class InvalidJSON(BVError):
    pass


def _no_float(text):
    raise InvalidJSON(f"non-integer number {text} in input")


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_no_float, parse_constant=_no_float)
    except json.JSONDecodeError as e:
        raise InvalidJSON(f"malformed JSON: {e}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _matrix(entry, where: str):
    if not isinstance(entry, dict) or "matrix" not in entry:
        raise InvalidDiagram(f"{where}: expected an object with a 'matrix' key")
    m = entry["matrix"]
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise InvalidDiagram(f"{where}: matrix must be a list of rows")
    try:
        return as_matrix(m)
    except (TypeError, ValueError) as e:
        raise InvalidDiagram(f"{where}: {e}") from None


def _order(entry, matrix, where: str):
    o = entry.get("order", "left-right")
    if o == "left-right":
        return left_right(matrix)
    if not isinstance(o, list):
        raise InvalidOrder(f"{where}: order must be 'left-right' or a list per vertex")
    out = []
    for slots in o:
        if not isinstance(slots, list):
            raise InvalidOrder(f"{where}: each vertex order is a list of [source, copy] pairs")
        vs = []
        for s in slots:
            if (not isinstance(s, list) or len(s) != 2
                    or any(isinstance(x, bool) or not isinstance(x, int) for x in s)):
                raise InvalidOrder(f"{where}: bad slot {s!r}")
            vs.append((s[0], s[1]))
        out.append(tuple(vs))
    return tuple(out)


def ordered_from_json(obj: Any) -> OrderedDiagram:
    if not isinstance(obj, dict):
        raise InvalidDiagram("diagram JSON must be an object")
    levels = obj.get("levels")
    if not isinstance(levels, list):
        raise InvalidDiagram("'levels' must be a list")
    tail_obj = obj.get("tail")
    tail = []
    if tail_obj is not None:
        if not isinstance(tail_obj, dict) or not isinstance(tail_obj.get("repeat"), list):
            raise InvalidDiagram("'tail' must be {\"repeat\": [...]}")
        tail = tail_obj["repeat"]
    mats = [_matrix(e, f"level {n}") for n, e in enumerate(levels, 1)]
    tmats = [_matrix(e, f"tail level {j}") for j, e in enumerate(tail)]
    diagram = new_diagram(mats, tmats or None)
    orders = tuple(_order(e, m, f"level {n}") for n, (e, m) in enumerate(zip(levels, mats), 1))
    torders = tuple(_order(e, m, f"tail level {j}") for j, (e, m) in enumerate(zip(tail, tmats)))
    alphabet = obj.get("alphabet")
    if alphabet is not None and (not isinstance(alphabet, list)
                                 or not all(isinstance(a, str) for a in alphabet)):
        raise InvalidDiagram("'alphabet' must be a list of strings")
    return OrderedDiagram(diagram, orders, torders, None if alphabet is None else tuple(alphabet))


def diagram_from_json(obj: Any):
    return ordered_from_json(obj).diagram


def _level(matrix, order) -> dict:
    out = {"matrix": [list(r) for r in matrix]}
    if order != left_right(matrix):
        out["order"] = [[list(s) for s in vs] for vs in order]
    return out


def ordered_to_json(ordered: OrderedDiagram) -> dict:
    d = ordered.diagram
    out: dict = {"levels": [_level(m, o) for m, o in zip(d.levels, ordered.orders)]}
    if d.tail:
        out["tail"] = {"repeat": [_level(m, o) for m, o in zip(d.tail, ordered.tail_orders)]}
    if ordered.alphabet != default_alphabet(len(ordered.alphabet)):
        out["alphabet"] = list(ordered.alphabet)
    return out


def diagram_to_json(diagram) -> dict:
    return ordered_to_json(OrderedDiagram(diagram))


def k0_from_json(obj: Any) -> K0Element:
    if not isinstance(obj, dict) or "level" not in obj or "vector" not in obj:
        raise InvalidJSON('K0 element must be {"level": n, "vector": [...]}')
    level, vector = obj["level"], obj["vector"]
    if isinstance(level, bool) or not isinstance(level, int) or not isinstance(vector, list):
        raise InvalidJSON("bad K0 element")
    try:
        return K0Element(level, vector)
    except ValueError as e:
        raise InvalidJSON(str(e)) from None
