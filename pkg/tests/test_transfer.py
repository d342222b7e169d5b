from __future__ import annotations

import pytest

from ultracycles.corpus import load
from ultracycles.errors import BadPrime
from ultracycles.transfer import (
    TransferInstance,
    check_commutation,
    complexity_survey,
    default_sample,
    reduce_instance,
    run_operation,
)
from ultracycles.ultraproduct import HOLDS, PrimeSample


def _cycle(ideal, ring="Q[x]"):
    return TransferInstance("AssociatedCycle", {"ring": ring, "ambient": "affine", "ideal": ideal})


def test_default_sample():
    s = default_sample()
    assert len(s.primes) == 50 and s.primes[0] == 5


def test_reduce_instance_examples():
    red = reduce_instance(_cycle(["x^2 - 2"]), 7)
    assert red.payload["ideal"] == ["x^2 + 5"] and red.payload["field"] == "GF(7)"
    for p in (2, 3):
        with pytest.raises(BadPrime):
            reduce_instance(_cycle(["1/6*x - 1"]), p)
    conics = TransferInstance("IntersectionProduct", {
        "ring": "Q[x,y,z]", "ambient": "projective",
        "a": [[["x^2 + y^2 - z^2"], 1]], "b": [[["x*y - 2*z^2"], 1]],
    })
    red = reduce_instance(conics, 101)
    assert red.payload["b"] == [[["x*y + 99*z^2"], 1]]


def test_denominator_primes_are_bad():
    rep = check_commutation(_cycle(["1/6*x - 1"]), PrimeSample.first(20))
    assert rep.outcomes[2] == rep.outcomes[3] == "bad-prime"


def test_square_has_multiplicity_two_everywhere():
    rep = check_commutation(_cycle(["x^2"]))
    assert rep.verdict == HOLDS and not rep.bad_primes
    assert all(o == "agree" for o in rep.outcomes.values())


def test_splitting_pattern_is_reported():
    rep = check_commutation(_cycle(["x^2 - 2"]))
    assert rep.verdict == HOLDS and not rep.disagreements
    patterns = rep.notes["splitting_patterns"]
    assert patterns["7"] == [1, 1]   # 3^2 = 2 mod 7
    assert patterns["5"] == [2]      # 2 is not a square mod 5


def test_quartic_degree_is_preserved():
    inst = TransferInstance("HilbertDegree", {"ring": "Q[x,y,z]", "ideal": ["x^4 + y^4 - z^4 + x*y*z^2"]})
    rep = check_commutation(inst)
    assert rep.verdict == HOLDS
    assert run_operation(inst)["degree"] == 4


def test_collision_of_points_is_a_bad_prime():
    inst = TransferInstance("LocalLength", {"ring": "Q[x]", "ideal": ["x^2 - 25"], "prime": ["x - 5"]})
    rep = check_commutation(inst, check_bad_primes=True)
    assert rep.bad_primes == [5]
    assert rep.bad_prime_agreement[5] == "disagree"
    assert rep.verdict == HOLDS and not rep.disagreements


@pytest.mark.parametrize("kind", ["associated_cycle", "koszul", "compose"])
def test_small_corpus_slice(kind):
    sample = PrimeSample.first(12, above=3)
    for raw in load(f"transfer_{kind}")[:4]:
        rep = check_commutation(TransferInstance.from_json(raw), sample)
        assert rep.verdict == HOLDS, rep.to_json()
        assert rep.exceptions_within_bad_set


def test_survey_examples():
    lines = [{"n": 2, "a": [[["x0 - x2"], 1]], "b": [[["x1 + x0"], 1]]}]
    assert complexity_survey(lines, d_values=(2,), n_values=(2,)).table[(2, 2)] == 2
    conics = [e for e in load("survey") if e["n"] == 2]
    t = complexity_survey(conics, d_values=(2, 3), n_values=(2,))
    assert t.table[(3, 2)] == 5
    assert complexity_survey(conics, 101, d_values=(2, 3), n_values=(2,)).table == t.table
