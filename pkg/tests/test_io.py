import json

import pytest
from hypothesis import given

from bvtoeplitz import io
from bvtoeplitz.errors import BVError, DimensionMismatch, InvalidOrder
from bvtoeplitz.ordering import OrderedDiagram, telescope_ordered
from bvtoeplitz.realization import cf_to_ers

from conftest import ers_diagram

D2SYM = '{"levels":[{"matrix":[[1],[1]]}],"tail":{"repeat":[{"matrix":[[2,1],[1,2]]}]}}'


def test_parse_d2sym(d2sym):
    assert io.ordered_from_json(io.loads(D2SYM)) == d2sym
    assert io.dumps(io.ordered_to_json(d2sym)) == D2SYM


def test_rejects_floats_and_bools():
    with pytest.raises(BVError):
        io.loads('{"levels":[{"matrix":[[1.0],[1]]}]}')
    with pytest.raises(BVError):
        io.ordered_from_json(io.loads('{"levels":[{"matrix":[[true],[1]]}]}'))
    with pytest.raises(BVError):
        io.loads('{"levels": NaN}')
    with pytest.raises(BVError):
        io.loads("{not json")


def test_structural_errors():
    with pytest.raises(BVError):
        io.ordered_from_json({"levels": "x"})
    with pytest.raises(DimensionMismatch):
        io.ordered_from_json({"levels": [{"matrix": [[1, 1]]}]})
    with pytest.raises(BVError):
        io.ordered_from_json({"levels": [{"matrix": [[1]]}], "tail": [{"matrix": [[2]]}]})
    with pytest.raises(BVError):
        io.ordered_from_json({"levels": [{"matrix": [[1], [1]]}], "alphabet": ["a"]})
    with pytest.raises(InvalidOrder):
        io.ordered_from_json({"levels": [{"matrix": [[2]], "order": [[[0, 0], [0, 0]]]}]})


def test_explicit_order_round_trip():
    obj = {"levels": [{"matrix": [[1], [1]]}],
           "tail": {"repeat": [{"matrix": [[2, 1], [1, 2]],
                                "order": [[[0, 1], [1, 0], [0, 0]], [[0, 0], [1, 0], [1, 1]]]}]},
           "alphabet": ["x", "y"]}
    o = io.ordered_from_json(obj)
    assert o.order(5, 0) == ((0, 1), (1, 0), (0, 0))
    assert o.alphabet == ("x", "y")
    assert io.ordered_to_json(o) == obj


def test_left_right_keyword_accepted():
    o = io.ordered_from_json({"levels": [{"matrix": [[2]], "order": "left-right"}]})
    assert "order" not in io.ordered_to_json(o)["levels"][0]


@given(ers_diagram())
def test_round_trip_random(d):
    o = OrderedDiagram(d)
    text = io.dumps(io.ordered_to_json(o))
    back = io.ordered_from_json(io.loads(text))
    assert back == o
    assert io.dumps(io.ordered_to_json(back)) == text


def test_round_trip_telescoped_and_cf(d2sym):
    t = telescope_ordered(d2sym, [2, 3])
    assert io.ordered_from_json(json.loads(io.dumps(io.ordered_to_json(t)))) == t
    d = cf_to_ers([1, 2, 3, 1]).diagram()
    assert io.diagram_from_json(io.loads(io.dumps(io.diagram_to_json(d)))) == d


def test_k0_json():
    g = io.k0_from_json({"level": 2, "vector": [1, -1]})
    assert g.to_json() == {"level": 2, "vector": [1, -1]}
    with pytest.raises(BVError):
        io.k0_from_json({"level": 2})
    with pytest.raises(BVError):
        io.k0_from_json({"level": 1, "vector": [1.5]})
