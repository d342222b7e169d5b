"""Prime-by-prime commutation checks: compute over Q then reduce, versus reduce then compute.

Rational components may split modulo p, so both sides are brought to a
canonical mod-p form: every rational component is reduced and re-split
into its mod-p minimal primes before comparison.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .config import current_limits
from .correspondences import VarietySpec, compose, correspondence_from_ideal, pushforward
from .cycles import Ambient, Cycle, associated_cycle, complexity, projective_minimal_primes
from .decompose import PrimeComponent, local_length, minimal_primes
from .errors import BadPrime, UltracyclesError, ValidationError
from .factor import PolyRecorder
from .groebner import Ideal
from .hilbert import hilbert
from .koszul import build_koszul, euler_characteristic_at, intersection_product
from .poly import GF, GREVLEX, Poly, PolyRing, ring_from_spec
from .ultraproduct import HOLDS, PrimeSample, TransferReport, classify, primes_above

KINDS = (
    "associated_cycle",
    "local_length",
    "koszul",
    "intersection_product",
    "pushforward",
    "compose",
    "hilbert_degree",
)

_ALIASES = {
    "AssociatedCycle": "associated_cycle",
    "LocalLength": "local_length",
    "KoszulData": "koszul",
    "IntersectionProduct": "intersection_product",
    "Pushforward": "pushforward",
    "Compose": "compose",
    "HilbertDegree": "hilbert_degree",
}


def default_sample() -> PrimeSample:
    """The first 50 primes above 3."""
    return PrimeSample(tuple(primes_above(3, 50)))


@dataclass
class TransferInstance:
    kind: str
    payload: dict
    name: str = ""
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        self.kind = _ALIASES.get(self.kind, self.kind)
        if self.kind not in KINDS:
            raise ValidationError(f"unknown instance kind {self.kind!r}")

    @classmethod
    def from_json(cls, obj: dict) -> "TransferInstance":
        return cls(obj["kind"], obj["payload"], obj.get("name", ""), obj.get("options", {}))

    def to_json(self) -> dict:
        return {"kind": self.kind, "name": self.name, "payload": self.payload,
                "options": self.options}


def load_corpus(path) -> list[TransferInstance]:
    with open(path) as fh:
        data = json.load(fh)
    return [TransferInstance.from_json(d) for d in data]


# ---------------------------------------------------------------------------
# payload helpers


def _field_ring(spec: str, p: int | None) -> PolyRing:
    ring = ring_from_spec(spec)
    return ring.with_field(GF(p)) if p else ring


def _polys(ring: PolyRing, texts):
    return [ring(t) for t in texts]


def _cycle_spec(ambient: Ambient, spec):
    """``[[generators], multiplicity]`` pairs; each ideal is re-split over the field."""
    terms = []
    for gens, m in spec:
        I = Ideal(ambient.ring, _polys(ambient.ring, gens))
        cyc = associated_cycle(I, ambient)
        terms.extend((c, m * k) for c, k in cyc.terms)
    return Cycle(ambient, terms)


def _variety(spec: dict, p: int | None) -> VarietySpec:
    field = GF(p) if p else "Q"
    ring = PolyRing(field, spec["variables"])
    I = Ideal(ring, _polys(ring, spec.get("ideal", [])))
    return VarietySpec(ring, I, spec.get("name", ""))


def payload_polynomials(inst: TransferInstance):
    """Every polynomial of the payload, parsed over Q, with its ring."""
    pl = inst.payload
    out = []
    k = inst.kind
    if k == "compose":
        X, Y, Z = (_variety(pl[s], None) for s in ("source", "middle", "target"))
        for V in (X, Y, Z):
            out.extend(V.ideal.gens)
        from .correspondences import product_ring

        out.extend(_polys(product_ring(X, Y), pl["alpha"]))
        out.extend(_polys(product_ring(Y, Z), pl["beta"]))
        return out
    ring = ring_from_spec(pl["ring"])
    for key in ("ideal", "prime", "coefficients", "sequence", "point"):
        if key in pl:
            out.extend(_polys(ring, pl[key]))
    for key in ("a", "b", "cycle"):
        for gens, _ in pl.get(key, []):
            out.extend(_polys(ring, gens))
    return out


def _payload_ideals(inst: TransferInstance):
    pl = inst.payload
    if inst.kind == "compose":
        return []
    ring = ring_from_spec(pl["ring"])
    out = []
    for key in ("ideal", "prime", "point"):
        if key in pl:
            out.append(Ideal(ring, _polys(ring, pl[key])))
    if "coefficients" in pl:
        out.append(Ideal(ring, _polys(ring, pl["coefficients"] + pl["sequence"])))
    for key in ("a", "b", "cycle"):
        for gens, _ in pl.get(key, []):
            out.append(Ideal(ring, _polys(ring, gens)))
    return out


def _reduce_text(ring_q: PolyRing, ring_p: PolyRing, text: str) -> str:
    return str(ring_q(text).to_ring(ring_p))


def reduce_instance(inst: TransferInstance, p: int) -> TransferInstance:
    """The same payload with every polynomial reduced mod ``p`` (``BadPrime`` on denominators)."""
    pl = json.loads(json.dumps(inst.payload))
    if inst.kind == "compose":
        from .correspondences import product_ring

        X, Y, Z = (_variety(inst.payload[s], None) for s in ("source", "middle", "target"))
        for s, V in (("source", X), ("middle", Y), ("target", Z)):
            ring_p = V.ring.with_field(GF(p))
            pl[s]["ideal"] = [_reduce_text(V.ring, ring_p, t) for t in inst.payload[s].get("ideal", [])]
            pl[s]["field"] = f"GF({p})"
        for key, (A, B) in (("alpha", (X, Y)), ("beta", (Y, Z))):
            rq = product_ring(A, B)
            rp = rq.with_field(GF(p))
            pl[key] = [_reduce_text(rq, rp, t) for t in inst.payload[key]]
        pl["field"] = f"GF({p})"
        return TransferInstance(inst.kind, pl, inst.name, inst.options)
    ring_q = ring_from_spec(inst.payload["ring"])
    ring_p = ring_q.with_field(GF(p))
    for key in ("ideal", "prime", "coefficients", "sequence", "point"):
        if key in pl:
            pl[key] = [_reduce_text(ring_q, ring_p, t) for t in pl[key]]
    for key in ("a", "b", "cycle"):
        if key in pl:
            pl[key] = [[[_reduce_text(ring_q, ring_p, t) for t in gens], m] for gens, m in pl[key]]
    pl["field"] = f"GF({p})"
    return TransferInstance(inst.kind, pl, inst.name, inst.options)


def _field_of(inst: TransferInstance) -> int | None:
    f = inst.payload.get("field", "Q")
    if f in ("Q", "QQ"):
        return None
    return int(f[3:-1]) if f.startswith("GF(") else int(f)


# ---------------------------------------------------------------------------
# running an operation; results are lists of (component, value) or plain data


def run_operation(inst: TransferInstance):
    """Compute the instance's operation over the payload's field."""
    pl = inst.payload
    p = _field_of(inst)
    k = inst.kind
    if k == "compose":
        X, Y, Z = (_variety(pl[s], p) for s in ("source", "middle", "target"))
        alpha = correspondence_from_ideal(X, Y, pl["alpha"])
        beta = correspondence_from_ideal(Y, Z, pl["beta"])
        return compose(alpha, beta).cycle
    ring = _field_ring(pl["ring"], p)
    kind = pl.get("ambient", "affine")
    ambient = Ambient(kind, ring)
    if k == "associated_cycle":
        I = Ideal(ring, _polys(ring, pl["ideal"]))
        return associated_cycle(I, ambient, pl.get("codimension"))
    if k == "local_length":
        I = Ideal(ring, _polys(ring, pl["ideal"]))
        P = Ideal(ring, _polys(ring, pl["prime"]))
        return [(c, local_length(I, c.ideal)) for c in minimal_primes(P)]
    if k == "koszul":
        J = Ideal(ring, _polys(ring, pl.get("coefficients", [])))
        K = build_koszul(ring, _polys(ring, pl["sequence"]), J)
        P = Ideal(ring, _polys(ring, pl["point"]))
        out = []
        for c in minimal_primes(P):
            chi, lengths = euler_characteristic_at(K, c.ideal)
            out.append((c, lengths))
        return out
    if k == "intersection_product":
        a = _cycle_spec(ambient, pl["a"])
        b = _cycle_spec(ambient, pl["b"])
        return intersection_product(a, b, ambient)
    if k == "pushforward":
        w = _cycle_spec(ambient, pl["cycle"])
        return pushforward(w, pl["keep"])
    if k == "hilbert_degree":
        I = Ideal(ring, _polys(ring, pl["ideal"]))
        h = hilbert(I)
        return {"polynomial": h.polynomial_str(), "degree": h.degree,
                "dimension": h.projective_dimension}
    raise ValidationError(f"unknown kind {k}")


def _resplit(comp: PrimeComponent, ambient_p: Ambient):
    """Mod-p cycle of a rational prime: reduce its generators and decompose again."""
    ring_p = ambient_p.ring
    I = Ideal(ring_p, [g.to_ring(ring_p) for g in comp.generators()])
    return associated_cycle(I, ambient_p)


def canonical(result) -> str:
    """Canonical serialization of a mod-p result."""
    if isinstance(result, Cycle):
        return json.dumps(result.to_json()["components"], sort_keys=True)
    if isinstance(result, list):
        items = sorted((list(c.key()), v) for c, v in result)
        return json.dumps(items, sort_keys=True)
    return json.dumps(result, sort_keys=True)


def reduce_result(result, inst: TransferInstance, p: int):
    """Bring a rational result to canonical mod-p form (re-splitting components)."""
    if isinstance(result, Cycle):
        amb = Ambient(result.ambient.kind, result.ambient.ring.with_field(GF(p)))
        terms = []
        for comp, m in result.terms:
            sub = _resplit(comp, amb)
            terms.extend((c, m * k) for c, k in sub.terms)
        return Cycle(amb, terms)
    if isinstance(result, list):
        out = []
        for comp, value in result:
            ring_p = comp.ring.with_field(GF(p))
            P = Ideal(ring_p, [g.to_ring(ring_p) for g in comp.generators()])
            for c in minimal_primes(P):
                out.append((c, value))
        return out
    return result


# ---------------------------------------------------------------------------
# bad primes


def _coefficient_integers(polys):
    out = set()
    for f in polys:
        for c in f.terms.values():
            d = int(c.denominator)
            if d > 1:
                out.add(d)
        if f:
            lc = f.leading_coefficient()
            n = abs(int(lc.numerator))
            if n > 1:
                out.add(n)
    return out


@dataclass
class BadPrimeData:
    recorder: PolyRecorder
    rational_result: object

    def is_bad(self, p: int) -> bool:
        return self.recorder.is_bad(p)


def rational_side(inst: TransferInstance) -> BadPrimeData:
    """Run over Q while recording everything that decides which primes are unsafe."""
    with PolyRecorder() as rec:
        result = run_operation(inst)
        for n in _coefficient_integers(payload_polynomials(inst)):
            rec.add_integer(n)
        for I in _payload_ideals(inst):
            rec.add_ideal(I)
        for comp in _components_of(result):
            rec.add_ideal(comp.ideal)
        for S, projective in _support_ideals(inst):
            comps = projective_minimal_primes(S) if projective else minimal_primes(S)
            _record_collisions(rec, comps)
    return BadPrimeData(rec, result)


def _support_ideals(inst: TransferInstance):
    """Ideals whose distinct components must stay apart modulo a good prime."""
    pl = inst.payload
    if inst.kind in ("compose", "hilbert_degree", "pushforward"):
        return []
    ring = ring_from_spec(pl["ring"])
    proj = pl.get("ambient") == "projective"
    if inst.kind in ("associated_cycle", "local_length"):
        return [(Ideal(ring, _polys(ring, pl["ideal"])), proj)]
    if inst.kind == "koszul":
        gens = pl.get("coefficients", []) + pl["sequence"]
        return [(Ideal(ring, _polys(ring, gens)), False)]
    out = []
    for ga, _ in pl["a"]:
        for gb, _ in pl["b"]:
            out.append((Ideal(ring, _polys(ring, ga + gb)), proj))
    return out


def _record_collisions(rec: PolyRecorder, comps):
    """Distinct components meet modulo p exactly when a pairwise sum changes shape."""
    for i, P in enumerate(comps):
        rec.add_ideal(P.ideal)
        for Q in comps[i + 1:]:
            rec.add_ideal(Ideal(P.ring, list(P.generators()) + list(Q.generators())))


def _components_of(result):
    if isinstance(result, Cycle):
        return [c for c, _ in result.terms]
    if isinstance(result, list):
        return [c for c, _ in result]
    return []


def bad_primes(inst: TransferInstance, sample: PrimeSample, data: BadPrimeData | None = None):
    data = data or rational_side(inst)
    return [p for p in sample.primes if data.is_bad(p)]


# ---------------------------------------------------------------------------
# commutation reports


@dataclass
class CommutationReport:
    instance: TransferInstance
    outcomes: dict  # p -> "agree" | "disagree" | "bad-prime"
    verdict: str
    bad_primes: list
    diffs: dict = field(default_factory=dict)
    bad_prime_agreement: dict = field(default_factory=dict)
    exceptions: list = field(default_factory=list)
    sample: PrimeSample | None = None
    notes: dict = field(default_factory=dict)

    @property
    def disagreements(self) -> list:
        return [p for p, o in self.outcomes.items() if o == "disagree"]

    @property
    def exceptions_within_bad_set(self) -> bool:
        return all(p in self.bad_primes for p in self.exceptions)

    def to_json(self) -> dict:
        return {
            "instance": self.instance.name,
            "kind": self.instance.kind,
            "verdict": self.verdict,
            "bad_primes": list(self.bad_primes),
            "exceptions": list(self.exceptions),
            "disagreements": self.disagreements,
            "outcomes": {str(p): o for p, o in self.outcomes.items()},
            "diffs": {str(p): d for p, d in self.diffs.items()},
            "bad_prime_agreement": {str(p): v for p, v in self.bad_prime_agreement.items()},
            "notes": self.notes,
        }


def _compare_at(inst: TransferInstance, rational, p: int):
    """``(agree, diff)`` comparing both routes at ``p``."""
    left = canonical(reduce_result(rational, inst, p))
    right = canonical(run_operation(reduce_instance(inst, p)))
    if left == right:
        return True, None
    return False, {"op_then_reduce": json.loads(left), "reduce_then_op": json.loads(right)}


def check_commutation(inst: TransferInstance, sample: PrimeSample | None = None,
                      check_bad_primes: bool = True) -> CommutationReport:
    sample = sample or default_sample()
    data = rational_side(inst)
    bad = [p for p in sample.primes if data.is_bad(p)]
    outcomes, diffs, at_bad = {}, {}, {}
    splitting = {}
    for p in sample.primes:
        if p in bad:
            outcomes[p] = "bad-prime"
            if check_bad_primes:
                try:
                    at_bad[p] = "agree" if _compare_at(inst, data.rational_result, p)[0] else "disagree"
                except UltracyclesError as exc:
                    at_bad[p] = f"error: {exc.code}"
            continue
        try:
            ok, diff = _compare_at(inst, data.rational_result, p)
        except UltracyclesError as exc:
            ok, diff = False, {"error": exc.code, "message": str(exc)}
        outcomes[p] = "agree" if ok else "disagree"
        if not ok:
            diffs[p] = diff
        comps = _components_of(data.rational_result)
        if comps and isinstance(data.rational_result, (Cycle, list)):
            splitting[p] = _split_pattern(data.rational_result, inst, p)
    good = sample.without(bad)
    successes = {p: outcomes[p] == "agree" for p in good.primes}
    verdict, exc, _, _ = classify(successes, good)
    notes = {}
    if splitting and len({tuple(v) for v in splitting.values()}) > 1:
        notes["splitting_patterns"] = {str(p): v for p, v in splitting.items()}
    return CommutationReport(inst, outcomes, verdict, bad, diffs, at_bad, exc, sample, notes)


def _split_pattern(result, inst, p):
    red = reduce_result(result, inst, p)
    comps = _components_of(red)
    return sorted(c.residue_degree if c.dimension == 0 else c.degree or 0 for c in comps)


def run_suite(instances, sample: PrimeSample | None = None, check_bad_primes: bool = False):
    return [check_commutation(inst, sample, check_bad_primes) for inst in instances]


def summarize(reports) -> dict:
    holds = sum(1 for r in reports if r.verdict == HOLDS)
    return {
        "total": len(reports),
        "cofinite-holds": holds,
        "summary": f"cofinite-holds: {holds}/{len(reports)}",
        "all_exceptions_in_bad_set": all(r.exceptions_within_bad_set for r in reports),
        "disagreements_at_good_primes": sum(len(r.disagreements) for r in reports),
    }


# ---------------------------------------------------------------------------
# complexity survey


@dataclass
class SurveyTable:
    field: str
    table: dict  # (d, n) -> max observed product complexity (0 if no pair qualifies)
    d_values: tuple
    n_values: tuple

    def monotone(self) -> bool:
        for n in self.n_values:
            row = [self.table[(d, n)] for d in self.d_values]
            if any(b < a for a, b in zip(row, row[1:])):
                return False
        for d in self.d_values:
            col = [self.table[(d, n)] for n in self.n_values]
            if any(b < a for a, b in zip(col, col[1:])):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "d_values": list(self.d_values),
            "n_values": list(self.n_values),
            "table": {f"{d},{n}": v for (d, n), v in sorted(self.table.items())},
        }

    def rows(self):
        yield ["d \\ n"] + [str(n) for n in self.n_values]
        for d in self.d_values:
            yield [str(d)] + [str(self.table[(d, n)]) for n in self.n_values]


def complexity_survey(corpus, p: int | None = None, d_values=(2, 3, 4, 5),
                      n_values=(2, 3)) -> SurveyTable:
    """Largest product complexity among pairs whose factors have complexity below ``d``.

    A cycle has complexity below ``d`` when its certificate value is at most
    ``d``.  Each corpus entry is ``{"n": n, "a": cycle spec, "b": cycle spec}``
    on projective n-space with variables ``x0..xn``.
    """
    table = {(d, n): 0 for d in d_values for n in n_values}
    for entry in corpus:
        n = entry["n"]
        if n not in n_values:
            continue
        names = entry.get("variables") or [f"x{i}" for i in range(n + 1)]
        ring = PolyRing(GF(p) if p else "Q", names)
        amb = Ambient.projective(ring)
        a = _cycle_spec(amb, entry["a"])
        b = _cycle_spec(amb, entry["b"])
        ca, cb = complexity(a).c, complexity(b).c
        prod = intersection_product(a, b, amb)
        cp = complexity(prod).c
        for d in d_values:
            if ca <= d and cb <= d:
                table[(d, n)] = max(table[(d, n)], cp)
    return SurveyTable("Q" if not p else f"GF({p})", table, tuple(d_values), tuple(n_values))
