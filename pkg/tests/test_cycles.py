from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultracycles.cycles import Ambient, Cycle, associated_cycle, complexity, cycle_of, zero_cycle
from ultracycles.errors import AmbientMismatch, ValidationError
from ultracycles.groebner import Ideal
from ultracycles.poly import GF, PolyRing

A2 = Ambient.affine(PolyRing("Q", ["x", "y"]))
P2 = Ambient.projective(PolyRing("Q", ["x", "y", "z"]))


def _cyc(amb, *texts, codim=None):
    return associated_cycle(Ideal(amb.ring, [amb.ring(t) for t in texts]), amb, codim)


def _summary(c):
    return [(list(map(str, comp.generators())), m) for comp, m in c.terms]


def test_associated_cycle_examples():
    A1 = Ambient.affine(PolyRing("Q", ["x"]))
    assert _summary(_cyc(A1, "x^2")) == [(["x"], 2)]
    assert sorted(_summary(_cyc(A2, "x*y"))) == [(["x"], 1), (["y"], 1)]
    c = _cyc(A2, "x^2", "x*y", codim=1)
    assert _summary(c) == [(["x"], 1)]
    assert len(c.discarded) == 0  # the origin is embedded, not minimal


def test_mixed_dimension_components_are_discarded():
    c = _cyc(A2, "x*y", "x*(y - 1)")  # the line x = 0 and the point (0, 1)... union
    assert c.codimension == 1


def test_cycle_arithmetic():
    L = cycle_of(P2, [(["x"], 1)])
    M = cycle_of(P2, [(["y"], 1)])
    assert 2 * L + 3 * L == 5 * L
    assert (L - L).is_zero()
    assert 2 * (L - M) == cycle_of(P2, [(["x"], 2), (["y"], -2)])


def test_degree_examples():
    assert cycle_of(P2, [(["x^2 + y^2 - z^2"], 1)]).degree() == 2
    assert cycle_of(P2, [(["x"], 3), (["y"], -1)]).degree() == 2


def test_projective_components():
    c = _cyc(P2, "x^2", "y^2")
    assert _summary(c) == [(["x", "y"], 4)]
    assert _cyc(P2, "x*y*z").degree() == 3
    cusp = _cyc(P2, "y^2*z - x^3")
    assert cusp.degree() == 3


def test_complexity_examples():
    assert complexity(cycle_of(P2, [(["x"], 3)])).c == 4
    assert complexity(zero_cycle(P2)).c == 1
    quartic_line = cycle_of(P2, [(["x^4 + y^4 + z^4"], 1), (["x"], 1)])
    assert complexity(quartic_line).c == 5


def test_ambient_mismatch():
    L = cycle_of(P2, [(["x"], 1)])
    other = cycle_of(Ambient.projective(PolyRing(GF(7), ["x", "y", "z"])), [(["x"], 1)])
    with pytest.raises(AmbientMismatch):
        L + other


def test_mixed_codimension_rejected():
    line = cycle_of(P2, [(["x"], 1)])
    point = cycle_of(P2, [(["x", "y"], 1)])
    with pytest.raises((ValidationError, AmbientMismatch)):
        line + point


def test_serialization_is_canonical():
    a = cycle_of(P2, [(["x"], 1), (["y"], 2)])
    b = cycle_of(P2, [(["y"], 2), (["x"], 1)])
    assert a.to_json() == b.to_json()
    assert str(a) == str(b)


@given(st.integers(1, 4), st.integers(1, 3), st.integers(-3, 3))
def test_power_of_a_line_has_multiplicity(k, a, b):
    c = _cyc(A2, f"(x - {a}*y - ({b}))^{k}")
    assert [m for _, m in c.terms] == [k]


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4, unique=True))
def test_product_of_lines_degree(roots):
    f = "*".join(f"(x - {r}*z)" for r in roots)
    c = _cyc(P2, f)
    assert c.degree() == len(roots)
    assert all(m == 1 for _, m in c.terms)
