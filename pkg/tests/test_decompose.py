from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultracycles.decompose import (
    local_dimensions_oracle,
    local_length,
    minimal_primes,
    primary_component,
    zero_dim_points,
)
from ultracycles.groebner import Ideal
from ultracycles.poly import GF, PolyRing

R = PolyRing("Q", ["x", "y"])


def _I(*texts, ring=R):
    return Ideal(ring, [ring(t) for t in texts])


def _keys(comps):
    return sorted(c.key() for c in comps)


def test_minimal_primes_examples():
    assert _keys(minimal_primes(_I("x^2*y"))) == [("x",), ("y",)]
    assert _keys(minimal_primes(_I("y - x^2", "y"))) == [("x", "y")]
    comps = minimal_primes(_I("x^2 + y^2"))
    assert len(comps) == 1 and comps[0].dimension == 1


def test_splitting_depends_on_field():
    assert len(minimal_primes(_I("x^2 + 1", "y"))) == 1
    F5 = R.with_field(GF(5))
    assert len(minimal_primes(_I("x^2 + 1", "y", ring=F5))) == 2
    F7 = R.with_field(GF(7))
    assert len(minimal_primes(_I("x^2 + 1", "y", ring=F7))) == 1


def test_local_length_examples():
    A1 = PolyRing("Q", ["x"])
    assert local_length(_I("x^2", ring=A1), _I("x", ring=A1)) == 2
    assert local_length(_I("x", ring=A1), _I("x", ring=A1)) == 1
    assert local_length(_I("x^3", "x*y"), _I("x")) == 1


def test_embedded_component_is_not_a_minimal_prime():
    comps = minimal_primes(_I("x^3", "x*y"))
    assert _keys(comps) == [("x",)]


def test_primary_component_at_origin():
    Q = primary_component(_I("y - x^2", "y*(y - 1)"), _I("x", "y"))
    assert Q == _I("y", "x^2")


def _random_zero_dim(rng, ring):
    a, b = rng.randint(-2, 2), rng.randint(-2, 2)
    k, m = rng.randint(1, 3), rng.randint(1, 3)
    X, Y = ring(f"x - ({a})"), ring(f"y - ({b})")
    gens = [Y**m - rng.randint(1, 3) * X ** (k + 1), X**k * Y * (X - 1) + rng.randint(0, 2) * Y**(m + 1)]
    return Ideal(ring, gens), Ideal(ring, [X, Y])


@pytest.mark.parametrize("seed", range(12))
def test_local_length_methods_agree_with_oracle(seed):
    rng = random.Random(seed)
    I, P = _random_zero_dim(rng, R)
    oracle = local_dimensions_oracle(I)
    comps = minimal_primes(I)
    assert len(comps) == len(oracle)
    for c in comps:
        (expected,) = [n for M, n in oracle if M == c.ideal]
        assert local_length(I, c.ideal) == expected
        assert local_length(I, c.ideal, method="filtration") == expected


@given(st.integers(1, 4), st.integers(1, 4), st.sampled_from(["Q", 5, 7]))
def test_monomial_length_at_origin(a, b, field):
    ring = R if field == "Q" else R.with_field(GF(field))
    I = _I(f"x^{a}", f"y^{b}", ring=ring)
    assert local_length(I, _I("x", "y", ring=ring)) == a * b


def test_zero_dim_points_sum_to_vector_space_dimension():
    I = _I("x^2 - 2", "y^3 - y")
    degrees = dict((tuple(M.groebner()), d) for M, d in zero_dim_points(I))
    total = sum(degrees[tuple(M.groebner())] * n for M, n in local_dimensions_oracle(I))
    assert total == I.vector_space_dimension() == 6
    assert len(zero_dim_points(I)) == 3
