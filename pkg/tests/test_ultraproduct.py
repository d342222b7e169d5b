from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultracycles.config import use_limits
from ultracycles.errors import DepthExceeded, DivisionByZeroAlmostEverywhere, ParseError, PrimeTooLarge
from ultracycles.ultraproduct import (
    FAILS,
    HOLDS,
    SPLIT,
    PrimeSample,
    UltraElement,
    evaluate_sentence,
    los_verdict,
    n_times_one,
    parse_sentence,
    prime_divisors,
)

ODD = PrimeSample.odd(30)


def test_arithmetic_examples():
    half = UltraElement.parse("1/2")
    assert half.value(5) == 3
    two = UltraElement.constant(2)
    assert (two.inverse(ODD) * two).equivalent(UltraElement.constant(1), ODD, cap=0)
    pm1 = UltraElement.parse("p - 1") + UltraElement.constant(1)
    assert all(pm1.value(p) == 0 for p in ODD.primes)
    assert pm1.equivalent(UltraElement.constant(0), ODD)


def test_inverse_of_zero_fails():
    with pytest.raises(DivisionByZeroAlmostEverywhere):
        UltraElement.parse("p").inverse(ODD)


def test_evaluate_examples():
    assert evaluate_sentence("exists x. x*x = -1", 5)
    assert not evaluate_sentence("exists x. x*x = -1", 7)
    assert evaluate_sentence("1 + 1 = 0", 2)
    assert not evaluate_sentence("1 + 1 = 0", 3)
    assert evaluate_sentence("forall x. exists y. x*y = 1 | x = 0", 11)


def test_parser_errors_and_limits():
    with pytest.raises(ParseError):
        parse_sentence("exists x. x * = 1")
    s = parse_sentence("exists x. exists y. exists z. exists w. x = y")
    with pytest.raises(DepthExceeded):
        evaluate_sentence(s, 3)
    with use_limits(prime_bound=50):
        with pytest.raises(PrimeTooLarge):
            evaluate_sentence("exists x. x = 1", 53)


def test_sentence_depth():
    assert parse_sentence("exists x. x*x = -1").depth() == 1


def test_verdict_examples():
    rep = los_verdict("1 + 1 != 0", PrimeSample.first(100))
    assert rep.verdict == HOLDS and rep.exceptions == [2]
    rep = los_verdict("exists x. x*x = -1", PrimeSample.odd(100))
    assert rep.verdict == SPLIT and rep.split_confirmed


@pytest.mark.parametrize("n", [2, 6, 12, 30, 49])
def test_characteristic_zero_phenomenon(n):
    rep = los_verdict(n_times_one(n), PrimeSample.first(60))
    assert rep.verdict == HOLDS
    assert rep.exceptions == prime_divisors(n)


@given(st.integers(2, 40))
def test_sentence_and_negation_never_both_hold(n):
    sample = PrimeSample.first(40)
    a = los_verdict(n_times_one(n), sample)
    b = los_verdict(parse_sentence(n_times_one(n)).negate(), sample)
    assert not (a.verdict == HOLDS and b.verdict == HOLDS)
    assert b.verdict == FAILS


@given(st.integers(-20, 20), st.integers(1, 20), st.sampled_from([5, 7, 11, 13]))
def test_field_operations_agree_with_modular_arithmetic(a, b, p):
    x = UltraElement.parse(f"{a}/{b}")
    y = UltraElement.parse("p + 2")
    q = Fraction(a, b)
    if q.denominator % p == 0:
        assert x.value(p) is None
        return
    assert (x * y).value(p) == q.numerator * pow(q.denominator, -1, p) * 2 % p
    assert (x - x).value(p) == 0
