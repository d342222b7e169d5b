from __future__ import annotations

from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ultracycles.cycles import Ambient, associated_cycle, cycle_of
from ultracycles.decompose import minimal_primes
from ultracycles.errors import ImproperIntersection
from ultracycles.groebner import Ideal
from ultracycles.koszul import (
    build_koszul,
    euler_characteristic_at,
    homology_length_at,
    intersection_multiplicity,
    intersection_product,
    verify_complex,
)
from ultracycles.poly import GF, PolyRing

R = PolyRing("Q", ["x", "y"])


def _I(*texts, ring=R):
    return Ideal(ring, [ring(t) for t in texts])


def _prime(*texts, ring=R):
    (c,) = minimal_primes(_I(*texts, ring=ring))
    return c


def test_build_koszul_examples():
    A1 = PolyRing("Q", ["x"])
    K = build_koszul(A1, [A1("x")])
    assert K.length == 1 and K.rank(0) == 1 and K.rank(1) == 1
    K2 = build_koszul(R, [R("x"), R("y")])
    assert [K2.rank(i) for i in range(3)] == [1, 2, 1]
    verify_complex(K2)
    K3 = build_koszul(A1, [A1("x"), A1("x")])
    verify_complex(K3)


def test_homology_examples():
    K = build_koszul(R, [R("x"), R("y")])
    P = _I("x", "y")
    assert [homology_length_at(K, i, P) for i in range(3)] == [1, 0, 0]
    K = build_koszul(R, [R("y")], _I("y - x^2"))
    assert homology_length_at(K, 0, P) == 2
    A1 = PolyRing("Q", ["x"])
    K = build_koszul(A1, [A1("x"), A1("x")])
    chi, lengths = euler_characteristic_at(K, _I("x", ring=A1))
    assert lengths == [1, 1, 0] and chi == 0


@pytest.mark.parametrize(
    "v,w,expected",
    [("y - x^2", "y", 2), ("y", "x", 1), ("y^2 - x^3", "y", 3)],
)
def test_multiplicity_examples(v, w, expected):
    V, W, P = _prime(v), _prime(w), _prime("x", "y")
    for method in ("auto", "koszul", "cohen-macaulay"):
        rep = intersection_multiplicity(V, W, P, method)
        assert rep.euler_characteristic == expected
        assert rep.lengths[1:] == [0] * (len(rep.lengths) - 1)


def test_improper_intersection_rejected():
    V = _prime("y")
    with pytest.raises(ImproperIntersection):
        intersection_multiplicity(V, V, _prime("x", "y"))


def test_product_examples():
    A2 = Ambient.affine(R)
    a = cycle_of(A2, [(["x"], 1)])
    b = cycle_of(A2, [(["y"], 1)])
    assert [(c.key(), m) for c, m in intersection_product(a, b).terms] == [(("x", "y"), 1)]
    assert intersection_product(2 * a, b) == 2 * intersection_product(a, b)
    P2 = Ambient.projective(PolyRing("Q", ["x", "y", "z"]))
    c1 = cycle_of(P2, [(["x^2 + y^2 - z^2"], 1)])
    c2 = cycle_of(P2, [(["x*y - 2*z^2 + y^2"], 1)])
    assert intersection_product(c1, c2).degree() == 4


def test_tangent_line_over_prime_field():
    P2 = Ambient.projective(PolyRing(GF(101), ["x", "y", "z"]))
    conic = cycle_of(P2, [(["y*z - x^2"], 1)])
    tangent = cycle_of(P2, [(["y"], 1)])
    prod = intersection_product(conic, tangent)
    assert [m for _, m in prod.terms] == [2]


@given(st.integers(1, 4), st.integers(1, 4))
def test_curve_against_axis(a, b):
    assume(gcd(a, b) == 1)
    V, W, P = _prime(f"y^{a} - x^{b}"), _prime("y"), _prime("x", "y")
    assert intersection_multiplicity(V, W, P).euler_characteristic == b


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(2, 3))
def test_product_is_commutative(s, t, d):
    P2 = Ambient.projective(PolyRing("Q", ["x", "y", "z"]))
    a = cycle_of(P2, [([f"y*z^{d - 1} - x^{d} - {s}*z^{d}"], 1)])
    b = cycle_of(P2, [([f"x - {t}*y - z"], 1)])
    ab = intersection_product(a, b)
    assert ab == intersection_product(b, a)
    assert ab.degree() == d
