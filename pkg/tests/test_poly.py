from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ultracycles.errors import BadPrime, ParseError
from ultracycles.factor import univariate_factor
from ultracycles.poly import GF, GREVLEX, LEX, PolyRing, dehomogenize, homogenize, reduce_mod_p

R = PolyRing("Q", ["x", "y", "z"])
x, y, z = R.gens


def test_arithmetic_examples():
    assert (x + y) + (x - y) == 2 * x
    assert (x + 1) * (x - 1) == x**2 - 1
    F = PolyRing(GF(5), ["x"])
    t = F.gen(0)
    assert (t + 3) * (t + 2) == t**2 + 1


def test_reduce_mod_p_examples():
    Q1 = PolyRing("Q", ["x"])
    assert str(reduce_mod_p(Q1("1/2*x + 3"), 5)) == "3*x + 3"
    assert str(reduce_mod_p(Q1("x^2 - 1"), 7)) == "x^2 + 6"
    with pytest.raises(BadPrime) as exc:
        reduce_mod_p(Q1("1/3*x"), 3)
    assert exc.value.p == 3


def test_parse_and_print_round_trip():
    f = R("3/2*x^2*y - z + 1")
    assert R(str(f)) == f
    assert f.leading_coefficient(GREVLEX) == Fraction(3, 2)
    with pytest.raises(ParseError):
        R("x + ")
    with pytest.raises(ParseError):
        R("x + w")


def test_homogenize_examples():
    S = PolyRing("Q", ["x", "y"])
    f = S("y - x^2")
    h = homogenize(f, "z")
    assert h == h.ring("y*z - x^2")
    assert dehomogenize(h, "z") == f
    c = homogenize(S.constant(5), "z")
    assert c.total_degree() == 0 and c.constant_coefficient() == 5


def test_univariate_factor_examples():
    Q1 = PolyRing("Q", ["x"])
    facs = univariate_factor(Q1("x^2 - 1"))
    assert sorted(str(g) for g, _ in facs) == ["x + 1", "x - 1"]
    assert [str(g) for g, _ in univariate_factor(Q1("x^2 + 1"))] == ["x^2 + 1"]
    F5 = PolyRing(GF(5), ["x"])
    assert sorted(str(g) for g, _ in univariate_factor(F5("x^2 + 1"))) == ["x + 2", "x + 3"]


def _sym(f):
    return sympy.Poly(sympy.sympify(str(f).replace("^", "**")), *sympy.symbols("x y z"))


small = st.integers(-4, 4)
monos = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
polys = st.dictionaries(monos, small, max_size=5).map(
    lambda d: R.from_dict({e: c for e, c in d.items() if c})
)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == R.zero()


@given(polys, polys)
def test_product_matches_sympy(a, b):
    assert _sym(a * b) == _sym(a) * _sym(b)


@given(polys, st.sampled_from([5, 7, 101]))
def test_reduction_is_a_ring_map(a, p):
    b = a * a + 3 * a
    assert reduce_mod_p(b, p) == reduce_mod_p(a, p) * reduce_mod_p(a, p) + 3 * reduce_mod_p(a, p)


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=7))
def test_univariate_factor_matches_sympy(coeffs):
    Q1 = PolyRing("Q", ["x"])
    f = Q1.from_dict({(i,): c for i, c in enumerate(coeffs) if c})
    if f.total_degree() < 1:
        return
    ours = sorted((g.total_degree(), k) for g, k in univariate_factor(f))
    sx = sympy.symbols("x")
    _, theirs = sympy.factor_list(sympy.sympify(str(f).replace("^", "**")), sx)
    theirs = sorted((sympy.degree(g, sx), k) for g, k in theirs if sympy.degree(g, sx) > 0)
    assert ours == theirs


def test_orders_differ():
    f = x * y**2 + x**2
    assert f.leading_monomial(LEX) == (2, 0, 0)
    assert f.leading_monomial(GREVLEX) == (1, 2, 0)
