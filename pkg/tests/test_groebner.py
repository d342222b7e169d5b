from __future__ import annotations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ultracycles.config import use_limits
from ultracycles.errors import ResourceLimit
from ultracycles.groebner import Ideal, buchberger, is_groebner_basis, normal_form
from ultracycles.poly import GF, GREVLEX, LEX, PolyRing

R = PolyRing("Q", ["x", "y"])
x, y = R.gens


def _ideal(*texts, ring=R):
    return Ideal(ring, [ring(t) for t in texts])


def test_normal_form_examples():
    assert normal_form(x**2, [x]) == 0
    assert normal_form(x**2 + y, [x**2 - y]) == 2 * y
    assert normal_form(y, [x]) == y


def test_groebner_examples():
    assert set(_ideal("x - 1", "y - x").groebner(LEX)) == {x - 1, y - 1}
    assert _ideal("x").groebner() == (x,)
    assert set(_ideal("x^2 + y^2", "x^2 - y^2").groebner()) == {x**2, y**2}


def test_ideal_operations():
    assert _ideal("x").intersection(_ideal("y")) == _ideal("x*y")
    assert _ideal("x^2").quotient(_ideal("x")) == _ideal("x")
    assert _ideal("x^2*y").saturation(_ideal("y")) == _ideal("x^2")
    assert _ideal("x") + _ideal("y") == _ideal("x", "y")
    assert _ideal("x") * _ideal("x", "y") == _ideal("x^2", "x*y")


def test_elimination_examples():
    assert _ideal("y - x^2").eliminate(["y"]).is_zero()
    assert _ideal("y - x^2", "y").eliminate(["y"]) == _ideal("x^2").to_ring(
        _ideal("y - x^2", "y").eliminate(["y"]).ring
    )
    S = PolyRing("Q", ["t", "x", "y"])
    E = _ideal("x - t", "y - t^2", ring=S).eliminate(["t"])
    assert [str(g) for g in E.gens] in (["-x^2 + y"], ["x^2 - y"])


def test_krull_dimension_examples():
    assert _ideal("y - x^2").krull_dimension() == 1
    assert _ideal("x", "y").krull_dimension() == 0
    assert Ideal(R).krull_dimension() == 2


def test_pair_cap_raises():
    I = _ideal("x^3 - 2*x*y", "x^2*y - 2*y^2 + x")
    with use_limits(pair_cap=1):
        with pytest.raises(ResourceLimit):
            buchberger(list(I.gens))


def _sympy_gb(texts, order):
    xs = sympy.symbols("x y")
    G = sympy.groebner([sympy.sympify(t.replace("^", "**")) for t in texts], *xs, order=order)
    return {sympy.Poly(g, *xs).monic() for g in G.exprs}


def _ours(texts, order, ring=R):
    xs = sympy.symbols("x y")
    basis = _ideal(*texts, ring=ring).groebner(order)
    return {sympy.Poly(sympy.sympify(str(g).replace("^", "**")), *xs).monic() for g in basis}


@pytest.mark.parametrize(
    "texts",
    [
        ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
        ["x^2 + y^2 - 1", "x*y - 2"],
        ["x^4 - y^3 + x", "x^2*y^2 - 3"],
        ["x^5 - y", "y^3 - x^2 + 1"],
    ],
)
def test_matches_sympy_reduced_basis(texts):
    assert _ours(texts, GREVLEX) == _sympy_gb(texts, "grevlex")
    assert _ours(texts, LEX) == _sympy_gb(texts, "lex")


monos = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monos, st.integers(-3, 3), min_size=1, max_size=4).map(
    lambda d: R.from_dict({e: c for e, c in d.items() if c})
)


@given(st.lists(polys, min_size=1, max_size=3))
def test_basis_properties(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    G = buchberger(gens)
    assert is_groebner_basis(G)
    for g in gens:
        assert normal_form(g, G) == 0


@given(st.lists(polys, min_size=1, max_size=3), polys)
def test_normal_form_independent_of_basis_order(gens, f):
    gens = [g for g in gens if g]
    if not gens:
        return
    G = list(buchberger(gens))
    assert normal_form(f, G) == normal_form(f, list(reversed(G)))


@given(st.lists(polys, min_size=1, max_size=3), st.sampled_from([5, 7, 101]))
def test_prime_field_bases(gens, p):
    F = R.with_field(GF(p))
    gens = [g.to_ring(F) for g in gens]
    gens = [g for g in gens if g]
    if not gens:
        return
    G = buchberger(gens)
    assert is_groebner_basis(G)
    assert all(normal_form(g, G) == 0 for g in gens)
