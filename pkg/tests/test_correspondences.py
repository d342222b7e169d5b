from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultracycles.correspondences import (
    VarietySpec,
    category_laws_check,
    check_finite_surjective,
    compose,
    correspondence_from_ideal,
    graph,
    identity,
    pushforward,
    spot_check_degree,
)
from ultracycles.cycles import Ambient, cycle_of
from ultracycles.errors import ImageNotInTarget, NotFinite
from ultracycles.groebner import Ideal
from ultracycles.poly import GF, PolyRing

X = VarietySpec.affine_space("Q", ["x"])
Y = VarietySpec.affine_space("Q", ["y"])
Z = VarietySpec.affine_space("Q", ["z"])


def _gens(corr):
    return [([str(g) for g in c.generators()], m) for c, m in corr.cycle.terms]


def test_finiteness_examples():
    sq = correspondence_from_ideal(X, Y, ["y - x^2"])
    assert [c.degrees() for c in sq.certificates] == [{"y": 1}]
    with pytest.raises(NotFinite):
        correspondence_from_ideal(X, Y, ["x*y - 1"])
    double = correspondence_from_ideal(X, Y, ["y^2 - x"])
    assert [c.degrees() for c in double.certificates] == [{"y": 2}]
    assert double.degree_over_source() == 2


def test_graph_examples():
    assert _gens(identity(X)) == [(["x - x'"], 1)]
    assert graph(X, Y, ["x^2"]) == correspondence_from_ideal(X, Y, ["y - x^2"])
    F = VarietySpec.affine_space(GF(5), ["x"])
    G = VarietySpec.affine_space(GF(5), ["y"])
    frob = graph(F, G, ["x^5"])
    assert [c.degrees() for c in frob.certificates] == [{"y": 1}]


def test_graph_must_land_in_target():
    R = PolyRing("Q", ["u", "v"])
    circle = VarietySpec(R, Ideal(R, [R("u^2 + v^2 - 1")]))
    with pytest.raises(ImageNotInTarget):
        graph(X, circle, ["x", "x"])


def test_pushforward_examples():
    A2 = Ambient.affine(PolyRing("Q", ["x", "y"]))
    img = pushforward(cycle_of(A2, [(["y^2 - x"], 1)]), ["x"])
    assert [m for _, m in img.terms] == [2]
    assert [m for _, m in pushforward(cycle_of(A2, [(["y"], 1)]), ["x"]).terms] == [1]
    assert pushforward(cycle_of(A2, [(["x"], 1)]), ["x"]).is_zero()


def test_compose_examples():
    f = graph(X, Y, ["x^2"])
    g = graph(Y, Z, ["y + 1"])
    assert compose(f, g) == correspondence_from_ideal(X, Z, ["z - x^2 - 1"])
    double = correspondence_from_ideal(X, Y, ["y^2 - x"])
    assert compose(identity(X), double) == double
    assert compose(double, identity(Y)) == double
    h = correspondence_from_ideal(Y, Z, ["z - y^2"])
    assert compose(double, h) == correspondence_from_ideal(X, Z, ["z - x"]).scale(2)


def test_laws_on_a_small_chain():
    W = VarietySpec.affine_space("Q", ["w"])
    chain = (
        correspondence_from_ideal(X, Y, ["y^2 - x"]),
        graph(Y, Z, ["y^3 - y"]),
        graph(Z, W, ["2*z + 1"]),
    )
    rep = category_laws_check([chain])
    assert rep.passed, rep.failures()


def test_spot_check_agrees_with_extension_degree():
    A2 = Ambient.affine(PolyRing("Q", ["x", "y"]))
    (comp, _), = cycle_of(A2, [(["y^3 - x*y - x^2 - 1"], 1)]).terms
    assert spot_check_degree(comp, [0]) == [3, 3, 3]


coeff = st.integers(-3, 3).filter(lambda c: c != 0)


@given(coeff, st.integers(1, 3), coeff, st.integers(1, 3))
def test_graph_functoriality(a, m, b, n):
    f = graph(X, Y, [f"{a}*x^{m} + 1"])
    g = graph(Y, Z, [f"{b}*y^{n} - y"])
    gf = graph(X, Z, [f"{b}*({a}*x^{m} + 1)^{n} - ({a}*x^{m} + 1)"])
    assert compose(f, g) == gf


@given(st.integers(2, 3), coeff)
def test_pushforward_degree_matches_fiber_count(d, c):
    A2 = Ambient.affine(PolyRing("Q", ["x", "y"]))
    w = cycle_of(A2, [([f"y^{d} - {c}*x*y - x"], 1)])
    img = pushforward(w, ["x"])
    assert [m for _, m in img.terms] == [d]
    (comp, _), = w.terms
    assert set(spot_check_degree(comp, [0], seed=abs(c))) == {d}
