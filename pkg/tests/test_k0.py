from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bvtoeplitz.decision import Sign
from bvtoeplitz.diagram import new_diagram, tower_height
from bvtoeplitz.errors import LevelTooLow, NoTail, NotERS
from bvtoeplitz.k0 import (
    K0Element,
    eigenvalue_test,
    gamma_rational,
    k0_add,
    k0_equal,
    k0_neg,
    k0_positivity,
    k0_push,
    max_equicontinuous_factor,
    order_unit,
)
from bvtoeplitz.realization import odometer_diagram
from bvtoeplitz.supernatural import SupernaturalNumber as SN

from conftest import ers_diagram
from oracles import naive_product

D = new_diagram([[[1], [1]]], [[[2, 1], [1, 2]]])
vec2 = st.tuples(st.integers(-20, 20), st.integers(-20, 20))


def test_push_examples():
    assert k0_push(D, order_unit(), 2) == K0Element(2, (3, 3))
    assert k0_push(D, K0Element(3, (0, 0)), 6) == K0Element(6, (0, 0))
    with pytest.raises(LevelTooLow):
        k0_push(D, K0Element(3, (1, 1)), 2)
    with pytest.raises(ValueError):
        k0_push(D, K0Element(2, (1, 1, 1)), 3)


@given(vec2, st.integers(1, 6), st.integers(0, 3), st.integers(0, 3))
def test_push_functorial(v, lvl, a, b):
    g = K0Element(lvl, v)
    assert k0_push(D, k0_push(D, g, lvl + a), lvl + a + b) == k0_push(D, g, lvl + a + b)


@given(vec2, st.integers(1, 5), st.integers(0, 3))
def test_push_is_matrix_product(v, lvl, steps):
    g = K0Element(lvl, v)
    if steps == 0:
        assert k0_push(D, g, lvl) == g
        return
    prod = naive_product([D.matrix(n) for n in range(lvl + 1, lvl + steps + 1)])
    expect = tuple(sum(r[j] * v[j] for j in range(2)) for r in prod)
    assert k0_push(D, g, lvl + steps).vector == expect


def test_add_neg_examples():
    u = order_unit()
    assert k0_add(D, u, K0Element(2, (3, 3))) == K0Element(2, (6, 6))
    g = K0Element(3, (4, -7))
    assert k0_add(D, g, k0_neg(g)).is_zero
    assert k0_equal(D, K0Element(2, (3, 3)), u, 4)


@given(vec2, vec2, st.integers(1, 4), st.integers(1, 4), st.integers(0, 3))
def test_add_commutes_with_push(v, w, lg, lh, extra):
    g, h = K0Element(lg, v), K0Element(lh, w)
    top = max(lg, lh) + extra
    s = k0_push(D, k0_add(D, g, h), top)
    assert s == k0_add(D, k0_push(D, g, top), k0_push(D, h, top))
    assert k0_add(D, g, h) == k0_add(D, h, g)


def test_positivity_examples():
    assert k0_positivity(D, order_unit(), 3) == Sign.POSITIVE
    for depth in (2, 5, 12):
        assert k0_positivity(D, K0Element(2, (1, -1)), depth) == Sign.unknown(depth)
    assert k0_positivity(D, K0Element(2, (2, -1)), 5) == Sign.POSITIVE
    assert k0_positivity(D, K0Element(2, (2, -1)), 2) == Sign.unknown(2)
    assert k0_positivity(D, K0Element(4, (-1, -3)), 4) == Sign.NEGATIVE
    assert k0_positivity(D, K0Element(1, (0, 0)), 1) == Sign.ZERO


def test_gamma_examples():
    assert gamma_rational(D, order_unit(), 3) == 1
    assert gamma_rational(D, K0Element(2, (3, 3)), 3) == 1
    assert gamma_rational(D, K0Element(2, (1, -1)), 10) is None
    assert gamma_rational(D, K0Element(3, (2, 2)), 3) == Fraction(2, 9)
    # (2,-1) becomes (3,0) and then (6,3): never constant
    assert gamma_rational(D, K0Element(2, (1, 2)), 6) is None
    with pytest.raises(NotERS):
        gamma_rational(new_diagram([[[1], [1]], [[2, 1], [1, 1]]]), order_unit(), 2)


def test_gamma_on_odometer_is_scaled_count():
    odo = odometer_diagram([], [2, 3]).diagram
    assert gamma_rational(odo, K0Element(3, (5,)), 3) == Fraction(5, 12)


@given(ers_diagram(), st.data())
def test_gamma_additive_and_order_preserving(d, data):
    def element():
        lvl = data.draw(st.integers(0, 3))
        n = d.num_vertices(lvl)
        if data.draw(st.booleans()):  # constant vectors are the interesting case
            c = data.draw(st.integers(-9, 9))
            return K0Element(lvl, (c,) * n)
        return K0Element(lvl, data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n)))

    g, h = element(), element()
    gg, gh = gamma_rational(d, g, 8), gamma_rational(d, h, 8)
    s = gamma_rational(d, k0_add(d, g, h), 8)
    if None not in (gg, gh, s):
        assert s == gg + gh
    if gg is not None:
        sign = k0_positivity(d, g, 8)
        if gg > 0:
            assert sign != Sign.NEGATIVE
        if not sign.is_unknown:
            expected = {1: Sign.POSITIVE, -1: Sign.NEGATIVE, 0: Sign.ZERO}[(gg > 0) - (gg < 0)]
            assert sign == expected


@given(ers_diagram(), st.integers(0, 4), st.integers(-30, 30))
def test_gamma_of_constant_vector(d, lvl, c):
    g = K0Element(lvl, (c,) * d.num_vertices(lvl))
    p = tower_height(d, lvl) if lvl else 1
    assert gamma_rational(d, g, lvl) == Fraction(c, p)


def test_eigenvalue_examples():
    odo = odometer_diagram([], [2, 3]).diagram
    assert eigenvalue_test(odo, 6)
    assert not eigenvalue_test(odo, 5)
    assert eigenvalue_test(D, 9)
    assert not eigenvalue_test(D, 2)
    with pytest.raises(NoTail):
        eigenvalue_test(new_diagram([[[2]], [[3]]]), 2)


@given(ers_diagram(), st.integers(2, 40), st.integers(2, 40))
def test_eigenvalue_divisor_lattice(d, p, q):
    from math import gcd
    if gcd(p, q) == 1 and eigenvalue_test(d, p) and eigenvalue_test(d, q):
        assert eigenvalue_test(d, p * q)


def test_max_equicontinuous_factor():
    f = max_equicontinuous_factor(D)
    assert f.supernatural == SN({}, {3})
    assert f.has_eigenvalue(Fraction(2, 27)) and not f.has_eigenvalue(Fraction(1, 2))
    assert max_equicontinuous_factor(odometer_diagram([], [2, 3]).diagram).supernatural == SN({}, {2, 3})
    other = new_diagram([[[1], [1]]], [[[5, 4], [4, 5]]])
    assert max_equicontinuous_factor(other).supernatural.equiv(f.supernatural)


def test_declared_equal_stays_equal():
    g, h = K0Element(2, (3, 3)), order_unit()
    assert k0_equal(D, g, h, 3)
    for lvl in range(2, 8):
        assert k0_push(D, g, lvl) == k0_push(D, h, lvl)


def test_json_shape():
    assert K0Element(2, (1, -1)).to_json() == {"level": 2, "vector": [1, -1]}
    assert Sign.unknown(4).to_json() == {"unknown": 4}
    assert Sign.POSITIVE.to_json() == "positive"
