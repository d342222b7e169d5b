"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""
from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from ultracycles.corpus import TRANSFER_KINDS, load, random_poly
from ultracycles.correspondences import (
    VarietySpec,
    compose,
    correspondence_from_ideal,
    extension_degree,
    graph,
    image_component,
    pushforward,
    spot_check_degree,
)
from ultracycles.cycles import Ambient, associated_cycle, cycle_of
from ultracycles.decompose import minimal_primes
from ultracycles.errors import UnsupportedShape
from ultracycles.groebner import Ideal, divide, is_groebner_basis, normal_form
from ultracycles.hilbert import hilbert
from ultracycles.koszul import build_koszul, euler_characteristic_at, intersection_product
from ultracycles.poly import GF, PolyRing
from ultracycles.transfer import (
    TransferInstance,
    bad_primes,
    complexity_survey,
    default_sample,
    reduce_instance,
    run_operation,
    run_suite,
    summarize,
)
from ultracycles.ultraproduct import (
    FAILS,
    HOLDS,
    SPLIT,
    PrimeSample,
    los_verdict,
    n_times_one,
    parse_sentence,
    prime_divisors,
)


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number} {title}: {detail}")
        assert ok, detail

    return emit


def _ring(spec: str) -> PolyRing:
    field, names = spec.split("[", 1)
    return PolyRing(GF(int(field[3:-1])) if field.startswith("GF") else "Q", names.rstrip("]").split(","))


# 1 ------------------------------------------------------------------------


def test_groebner_soundness(report):
    start = time.perf_counter()
    corpus = load("groebner")
    rng = random.Random(1)
    problems = []
    checked = 0
    for k, entry in enumerate(corpus):
        ring = _ring(entry["ring"])
        gens = [ring(t) for t in entry["ideal"]]
        G = list(Ideal(ring, gens).groebner())
        if not is_groebner_basis(G):
            problems.append(f"ideal {k}: not a Groebner basis")
        if any(normal_form(g, G) for g in gens):
            problems.append(f"ideal {k}: a generator does not reduce to zero")
        for _ in range(100):
            f = ring(random_poly(rng, ring.variables, rng.randint(1, 5), nterms=5, coeffs=20))
            r = normal_form(f, G)
            shuffled = G[:]
            rng.shuffle(shuffled)
            qs, r2 = divide(f, shuffled)
            back = r2
            for q, g in zip(qs, shuffled):
                back = back + q * g
            if r2 != r or back != f or normal_form(f, shuffled) != r:
                problems.append(f"ideal {k}: normal form depends on reduction order")
                break
            checked += 1
    elapsed = time.perf_counter() - start
    ok = len(corpus) >= 30 and not problems and elapsed < 120
    report(1, "groebner soundness", ok,
           f"{len(corpus)} ideals, {checked} normal forms, {elapsed:.1f}s" + (f"; {problems[:3]}" if problems else ""))


# 2 ------------------------------------------------------------------------


def test_bezout_in_the_plane(report):
    start = time.perf_counter()
    pairs = load("bezout")
    problems = []
    counts = {}
    for field, entries in pairs.items():
        counts[field] = len(entries)
        for k, e in enumerate(entries):
            ring = _ring(e["ring"])
            amb = Ambient.projective(ring)
            a = associated_cycle(Ideal(ring, [ring(e["f"])]), amb)
            b = associated_cycle(Ideal(ring, [ring(e["g"])]), amb)
            d1, d2 = e["degrees"]
            deg = intersection_product(a, b, amb).degree()
            if deg != d1 * d2:
                problems.append(f"{field} pair {k}: degree {deg} != {d1 * d2}")
    elapsed = time.perf_counter() - start
    ok = min(counts.values()) >= 20 and set(counts) == {"Q", "GF(101)"} and not problems and elapsed < 180
    report(2, "Bezout in P^2", ok, f"pairs {counts}, {elapsed:.1f}s" + (f"; {problems[:3]}" if problems else ""))


# 3 ------------------------------------------------------------------------


def _local_length_oracle(ring: PolyRing, seq, point: Ideal, cap: int = 40) -> int:
    """Stable value of dim k[x]/(I + m^N): two equal consecutive values pin it by Nakayama."""
    I = Ideal(ring, seq)
    prev = None
    for N in range(1, cap):
        cur = (I + point.power(N)).vector_space_dimension()
        if cur == prev:
            return cur
        prev = cur
    raise AssertionError("local quotient did not stabilize")


def _coefficient_at(cycle, point: Ideal) -> int:
    return sum(m for c, m in cycle.terms if c.ideal == point)


def test_koszul_euler_characteristic(report):
    corpus = load("koszul")
    problems = []
    via_product = 0
    for k, e in enumerate(corpus):
        ring = _ring(e["ring"])
        seq = [ring(t) for t in e["sequence"]]
        point = Ideal(ring, [ring(t) for t in e["point"]])
        (P,) = minimal_primes(point)
        chi, _ = euler_characteristic_at(build_koszul(ring, seq), P)
        oracle = _local_length_oracle(ring, seq, point)
        if chi != oracle:
            problems.append(f"instance {k}: koszul {chi} != oracle {oracle}")
            continue
        amb = Ambient.affine(ring)
        cycles = [associated_cycle(Ideal(ring, [f]), amb) for f in seq]
        prod = cycles[0]
        try:
            for c in cycles[1:]:
                prod = intersection_product(prod, c, amb)
        except UnsupportedShape:
            # intermediate curve outside the decomposition strategies
            continue
        mult = _coefficient_at(prod, P.ideal)
        if mult != oracle:
            problems.append(f"instance {k}: intersection multiplicity {mult} != oracle {oracle}")
        via_product += 1
    ok = len(corpus) >= 25 and not problems
    report(3, "Koszul Euler characteristic", ok,
           f"{len(corpus)} complete intersections, {via_product} also via intersection products"
           + (f"; {problems[:3]}" if problems else ""))


# 4 ------------------------------------------------------------------------


def _spaces(names):
    return [VarietySpec.affine_space("Q", [v]) for v in names]


def _step(src, dst, step):
    if "map" in step:
        return graph(src, dst, [step["map"]])
    return correspondence_from_ideal(src, dst, [step["ideal"]])


def test_correspondence_laws(report):
    maps = load("maps")
    problems = []
    func = 0
    for k, e in enumerate(maps["pairs"]):
        X = VarietySpec.affine_space("Q", e["X"])
        Y = VarietySpec.affine_space("Q", e["Y"])
        Z = VarietySpec.affine_space("Q", e["Z"])
        f_imgs = [X.ring(t) for t in e["f"]]
        gf = [Y.ring(t).compose(f_imgs, X.ring) for t in e["g"]]
        if compose(graph(X, Y, e["f"]), graph(Y, Z, e["g"])) != graph(X, Z, [str(h) for h in gf]):
            problems.append(f"pair {k}: graph is not functorial")
        func += 1
    assoc = bilin = multi = 0
    for k, t in enumerate(maps["triples"]):
        T = _spaces(t["variables"])
        a, b, c = (_step(T[s], T[s + 1], st) for s, st in enumerate(t["steps"]))
        if any(x.degree_over_source() >= 2 for x in (a, b, c)):
            multi += 1
        if compose(compose(a, b), c) != compose(a, compose(b, c)):
            problems.append(f"triple {k}: associativity")
        assoc += 1
        a2 = graph(T[0], T[1], [f"{k + 2}*{t['variables'][0]} - 1"])
        b2 = correspondence_from_ideal(T[1], T[2], [f"{t['variables'][2]}^2 - {t['variables'][1]}"])
        if compose(a + a2, b) != compose(a, b) + compose(a2, b):
            problems.append(f"triple {k}: left additivity")
        if compose(a, b + b2) != compose(a, b) + compose(a, b2):
            problems.append(f"triple {k}: right additivity")
        if compose(a.scale(3), b) != compose(a, b).scale(3):
            problems.append(f"triple {k}: scalars")
        bilin += 1
    ok = func >= 20 and assoc >= 10 and multi >= 3 and bilin >= 10 and not problems
    report(4, "correspondence laws", ok,
           f"functoriality {func}, associativity {assoc} ({multi} with degree >= 2), bilinearity {bilin}"
           + (f"; {problems[:3]}" if problems else ""))


# 5 ------------------------------------------------------------------------


def test_pushforward_formula(report):
    corpus = load("pushforward")
    problems = []
    for k, e in enumerate(corpus):
        ring = _ring(e["ring"])
        amb = Ambient.affine(ring)
        w = cycle_of(amb, [])
        for gens, m in e["cycle"]:
            w = w + associated_cycle(Ideal(ring, [ring(g) for g in gens]), amb).scale(m)
        keep = e["keep"]
        keep_idx = [ring.index(v) for v in keep]
        target = Ambient.affine(ring.with_variables(keep))
        expected = []
        for comp, m in w.terms:
            deg = extension_degree(comp, keep_idx)
            spots = spot_check_degree(comp, keep_idx, samples=3, seed=k)
            if any(s != deg for s in spots):
                problems.append(f"instance {k}: fiber counts {spots} vs degree {deg}")
            img = image_component(comp, keep_idx, target.ring)
            expected.append(([str(g) for g in img.generators()], m * deg))
        got = pushforward(w, keep, target)
        if got != cycle_of(target, expected):
            problems.append(f"instance {k}: pushforward {got} != {expected}")
    ok = len(corpus) >= 10 and not problems
    report(5, "pushforward formula", ok,
           f"{len(corpus)} projections, extension degrees spot-checked at 3 points each"
           + (f"; {problems[:3]}" if problems else ""))


# 6 ------------------------------------------------------------------------


def test_transfer_suite(report):
    start = time.perf_counter()
    sample = default_sample()
    lines = []
    ok = True
    for kind in TRANSFER_KINDS:
        instances = [TransferInstance.from_json(raw) for raw in load(f"transfer_{kind}")]
        s = summarize(run_suite(instances, sample))
        lines.append(f"{kind} {s['cofinite-holds']}/{s['total']}")
        ok &= (s["total"] >= 20 and s["cofinite-holds"] == s["total"]
               and s["all_exceptions_in_bad_set"] and s["disagreements_at_good_primes"] == 0)
    elapsed = time.perf_counter() - start
    ok = ok and len(TRANSFER_KINDS) == 7 and elapsed < 600
    report(6, "transfer suite", ok, f"{', '.join(lines)}; {len(sample.primes)} primes, {elapsed:.1f}s")


# 7 ------------------------------------------------------------------------


def _hypersurface_value(t: int, n: int, d: int) -> Fraction:
    """binom(t+n, n) - binom(t+n-d, n) as polynomials in t, evaluated at any integer t."""
    def binom(top: int) -> Fraction:
        v = Fraction(1)
        for i in range(n):
            v *= Fraction(top - i, i + 1)
        return v

    return binom(t + n) - binom(t + n - d)


def test_hypersurface_hilbert_polynomials(report):
    rng = random.Random(7)
    problems = []
    reductions = 0
    sample = default_sample()
    for n in (1, 2, 3):
        names = ["x", "y", "z", "w"][: n + 1]
        ring = PolyRing("Q", names)
        for d in range(1, 7):
            lead = (d,) + (0,) * n
            text = random_poly(rng, names, d, homogeneous=True, nterms=5, coeffs=30, leading=lead)
            h = hilbert(Ideal(ring, [ring(text)]))
            # a polynomial of degree n is determined by n + 1 values; use a few more, including t < 0
            if any(h.polynomial_at(t) != _hypersurface_value(t, n, d) for t in range(-3, n + 3)):
                problems.append(f"n={n} d={d}: {h.polynomial_str()}")
            inst = TransferInstance("hilbert_degree", {"ring": f"Q[{','.join(names)}]", "ideal": [text]})
            bad = set(bad_primes(inst, sample))
            for p in sample.primes:
                if p in bad:
                    continue
                if run_operation(reduce_instance(inst, p))["degree"] != d:
                    problems.append(f"n={n} d={d}: degree changes mod {p}")
                reductions += 1
    ok = not problems
    report(7, "hypersurface Hilbert polynomials", ok,
           f"18 hypersurfaces (n<=3, d<=6), {reductions} good reductions keep the degree"
           + (f"; {problems[:3]}" if problems else ""))


# 8 ------------------------------------------------------------------------


def test_los_phenomena(report):
    sample = PrimeSample.first(100)
    problems = []
    for n in range(2, 51):
        rep = los_verdict(n_times_one(n), sample)
        if rep.verdict != HOLDS or rep.exceptions != prime_divisors(n):
            problems.append(f"n={n}: {rep.verdict} {rep.exceptions}")
    odd = PrimeSample.odd(100)
    sq = los_verdict("exists x. x*x = -1", odd)
    dens = sq.densities["holds"]
    if sq.verdict != SPLIT or not 0.35 <= dens <= 0.65:
        problems.append(f"x^2 = -1: {sq.verdict} density {dens:.2f}")
    sentences = [n_times_one(n) for n in (2, 3, 12, 30)] + [
        "exists x. x*x = -1",
        "exists x. x*x = 2",
        "forall x. exists y. x*y = 1 | x = 0",
        "exists x. x*x*x = 2",
        "1 + 1 = 0",
    ]
    both = 0
    for text in sentences:
        s = parse_sentence(text)
        a, b = los_verdict(s, odd), los_verdict(s.negate(), odd)
        if a.verdict == HOLDS and b.verdict == HOLDS:
            both += 1
        if (a.verdict == HOLDS) != (b.verdict == FAILS):
            problems.append(f"{text}: {a.verdict} vs negation {b.verdict}")
    ok = not problems and both == 0
    report(8, "Los transfer phenomena", ok,
           f"n*1 != 0 for n=2..50 excepts exactly the prime divisors; x^2=-1 density {dens:.2f}; "
           f"{len(sentences)} sentence/negation pairs consistent" + (f"; {problems[:3]}" if problems else ""))


# 9 ------------------------------------------------------------------------


def test_complexity_survey(report):
    corpus = load("survey")
    base = complexity_survey(corpus)
    tables = {p: complexity_survey(corpus, p) for p in (101, 103, 107, 109, 113)}
    same = all(t.table == base.table for t in tables.values())
    ok = same and base.monotone() and all(t.monotone() for t in tables.values())
    cells = ", ".join(f"({d},{n})={v}" for (d, n), v in sorted(base.table.items()))
    report(9, "complexity survey", ok,
           f"{len(corpus)} pairs; table over Q {'equals' if same else 'differs from'} GF(101..113); {cells}")
