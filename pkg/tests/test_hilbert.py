from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultracycles.groebner import Ideal
from ultracycles.hilbert import hilbert, hilbert_function_by_rank
from ultracycles.poly import GF, PolyRing

P2 = PolyRing("Q", ["x", "y", "z"])


def _binom_poly_at(t, n, d):
    """binom(t+n, n) - binom(t+n-d, n) as a number, valid for t >= d."""
    return comb(t + n, n) - comb(t + n - d, n)


def test_examples():
    h = hilbert(Ideal(P2))
    assert [h.polynomial_at(s) for s in range(5)] == [Fraction((s + 2) * (s + 1), 2) for s in range(5)]
    assert h.degree == 1
    q = hilbert(Ideal(P2, [P2("x^4 + y^4 + z^4")]))
    assert q.polynomial_str() == "4*t - 2"
    assert q.degree == 4
    pt = hilbert(Ideal(P2, [P2("x"), P2("y")]))
    assert pt.polynomial_str() == "1" and pt.degree == 1 and pt.projective_dimension == 0


def test_twisted_cubic():
    P3 = PolyRing("Q", ["x", "y", "z", "w"])
    I = Ideal(P3, [P3(t) for t in ["x*z - y^2", "y*w - z^2", "x*w - y*z"]])
    h = hilbert(I)
    assert h.polynomial_str() == "3*t + 1"
    assert h.degree == 3


def _random_form(rng, ring, d):
    from ultracycles.corpus import random_poly

    lead = (d,) + (0,) * (ring.nvars - 1)
    return ring(random_poly(rng, ring.variables, d, homogeneous=True, nterms=5, coeffs=9, leading=lead))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_hypersurface_formula(n, d):
    rng = random.Random(100 * n + d)
    ring = PolyRing("Q", ["x", "y", "z", "w"][: n + 1])
    h = hilbert(Ideal(ring, [_random_form(rng, ring, d)]))
    for t in range(d, d + 4):
        assert h.polynomial_at(t) == _binom_poly_at(t, n, d)
    assert h.degree == d


@given(st.integers(1, 4), st.integers(1, 4), st.sampled_from(["Q", 7, 101]))
def test_hilbert_function_matches_linear_algebra(a, b, field):
    ring = P2 if field == "Q" else P2.with_field(GF(field))
    I = Ideal(ring, [ring(f"x^{a} - y*z^{a - 1}"), ring(f"y^{b} + x^{b}")])
    h = hilbert(I)
    for s in range(0, a + b + 2):
        assert h.hilbert_function(s) == hilbert_function_by_rank(I, s)


def test_complete_intersection_degree_is_product():
    I = Ideal(P2, [P2("x^2 + y^2 - z^2"), P2("x^3 - y*z^2 + z^3")])
    assert hilbert(I).degree == 6
