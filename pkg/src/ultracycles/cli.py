"""Command-line front end.

Input files use one statement per ``;``::

    ring Q[x,y];
    ambient affine;
    ideal (y - x^2, y);
    cycle 2 (x), -1 (y - 1);
    point (x, y);
    keep x;
    source Q[x];  middle Q[y] ();  target Q[z];
    alpha (y - x^2);  beta (z - y);
    sentence: exists x. x*x = -1;

Corpus commands (``transfer``, ``survey``) read JSON files instead.
Exit status: 0 success, 1 input or module error, 2 resource limit, 3 failed verdict.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

from .config import Limits, use_limits
from .correspondences import (
    VarietySpec,
    category_laws_check,
    compose,
    correspondence_from_ideal,
    product_ring,
    pushforward,
)
from .cycles import Ambient, Cycle, associated_cycle, complexity
from .decompose import minimal_primes
from .errors import ParseError, UltracyclesError, ValidationError
from .groebner import Ideal
from .hilbert import hilbert
from .koszul import intersection_multiplicity, intersection_product
from .poly import PolyRing, field_from_spec, order_from_name, parse_poly, ring_from_spec
from .ultraproduct import HOLDS, PrimeSample, los_verdict, parse_sentence, primes_above

CONFIG_ENV = "ULTRACYCLES_CONFIG"
COMMANDS = ("gb", "hilbert", "cycle", "mult", "product", "pushforward", "compose", "laws",
            "los", "transfer", "survey")
EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_VERDICT = 0, 1, 2, 3


@dataclass
class JobConfig:
    command: str
    inputs: list = field(default_factory=list)
    field_spec: str | None = None  # overrides the field named in the input
    order: str = "grevlex"
    limits: Limits = field(default_factory=Limits)
    sample_count: int = 50
    sample_above: int = 3
    survey_primes: tuple = (101, 103, 107, 109, 113)
    method: str = "auto"
    expect: str | None = None
    output: str | None = None
    text: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if self.field_spec is not None:
            field_from_spec(self.field_spec)
        order_from_name(self.order)
        if self.sample_count <= 0:
            raise ValidationError("sample count must be positive")

    def sample(self) -> PrimeSample:
        return PrimeSample(tuple(primes_above(self.sample_above, self.sample_count)))


# ---------------------------------------------------------------------------
# input grammar


@dataclass
class Statement:
    keyword: str
    body: str
    offset: int  # offset of body in the source text


@dataclass
class InputDocument:
    ring: PolyRing | None = None
    ambient: str = "affine"
    ideals: list = field(default_factory=list)
    cycles: list = field(default_factory=list)  # [(Ideal, multiplicity)] per cycle statement
    point: Ideal | None = None
    keep: list = field(default_factory=list)
    varieties: dict = field(default_factory=dict)
    correspondences: dict = field(default_factory=dict)  # name -> (gens text, offset)
    sentences: list = field(default_factory=list)

    def ambient_space(self) -> Ambient:
        if self.ring is None:
            raise ValidationError("input declares no ring")
        return Ambient(self.ambient, self.ring)


class _Source:
    def __init__(self, text: str):
        # blank out comments but keep offsets intact
        self.text = re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)

    def position(self, offset: int):
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def error(self, msg: str, offset: int, token: str = ""):
        line, col = self.position(offset)
        return ParseError(msg, line, col, token)


def _statements(src: _Source):
    text = src.text
    out = []
    depth, start = 0, 0
    for i, ch in enumerate(text + ";"):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise src.error("unbalanced ')'", i, ")")
        elif ch == ";" and depth == 0:
            stripped = text[start:i]
            if stripped.strip():
                lead = len(stripped) - len(stripped.lstrip())
                pos = start + lead
                body = stripped.strip()
                if body.startswith("sentence"):
                    kw = "sentence"
                    rest = body[len("sentence"):]
                    rest_off = pos + len("sentence")
                    if rest.lstrip().startswith(":"):
                        k = rest.index(":")
                        rest_off += k + 1
                        rest = rest[k + 1:]
                else:
                    kw = body.split(None, 1)[0].split("(", 1)[0]
                    rest = body[len(kw):]
                    rest_off = pos + len(kw)
                out.append(Statement(kw, rest, rest_off))
            start = i + 1
    if depth > 0:
        raise src.error("missing ')'", len(text), "")
    return out


def _split_top(body: str, sep: str = ","):
    """Split on ``sep`` at parenthesis depth 0; yields ``(piece, offset)``."""
    depth, start = 0, 0
    for i, ch in enumerate(body + sep):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            yield body[start:i], start
            start = i + 1


def _paren_group(src: _Source, body: str, offset: int):
    """Contents of the first ``( ... )`` group in ``body`` with its absolute offset."""
    i = body.find("(")
    if i < 0:
        raise src.error("expected '('", offset + len(body) - len(body.lstrip()), body.strip()[:1])
    depth = 0
    for j in range(i, len(body)):
        if body[j] == "(":
            depth += 1
        elif body[j] == ")":
            depth -= 1
            if depth == 0:
                return body[i + 1:j], offset + i + 1, body[:i], body[j + 1:]
    raise src.error("missing ')'", offset + len(body), "")


def _parse_gens(src: _Source, ring: PolyRing, inner: str, offset: int):
    gens = []
    if not inner.strip():
        return gens
    for piece, rel in _split_top(inner):
        line, col = src.position(offset + rel)
        if not piece.strip():
            raise src.error("empty generator", offset + rel + len(piece), ",")
        gens.append(parse_poly(piece, ring, line, col))
    return gens


def _ring(src: _Source, spec: str, offset: int, field_override):
    try:
        ring = ring_from_spec(spec)
    except ValueError as exc:
        raise src.error(str(exc), offset, spec.strip()[:1]) from None
    if field_override:
        ring = ring.with_field(field_from_spec(field_override))
    return ring


def parse_input(text: str, field_override: str | None = None) -> InputDocument:
    """Parse the statement grammar into a validated document."""
    src = _Source(text)
    doc = InputDocument()
    for st in _statements(src):
        kw, body, off = st.keyword, st.body, st.offset
        if kw == "ring":
            doc.ring = _ring(src, body, off, field_override)
        elif kw == "ambient":
            kind = body.strip()
            if kind not in ("affine", "projective"):
                raise src.error(f"unknown ambient {kind!r}", off, kind)
            doc.ambient = kind
        elif kw in ("ideal", "point"):
            _need_ring(src, doc, off)
            inner, ioff, _, _ = _paren_group(src, body, off)
            I = Ideal(doc.ring, _parse_gens(src, doc.ring, inner, ioff))
            if kw == "ideal":
                doc.ideals.append(I)
            else:
                doc.point = I
        elif kw == "cycle":
            _need_ring(src, doc, off)
            terms = []
            for piece, rel in _split_top(body):
                inner, ioff, before, _ = _paren_group(src, piece, off + rel)
                coeff = before.strip() or "1"
                try:
                    m = int(coeff.rstrip("*").strip())
                except ValueError:
                    raise src.error("expected an integer multiplicity", off + rel, coeff) from None
                terms.append((Ideal(doc.ring, _parse_gens(src, doc.ring, inner, ioff)), m))
            doc.cycles.append(terms)
        elif kw == "keep":
            doc.keep = [v.strip() for v in body.split(",") if v.strip()]
        elif kw in ("source", "middle", "target", "last"):
            spec_end = body.find("]")
            if spec_end < 0:
                raise src.error("expected a ring such as Q[x]", off, body.strip()[:1])
            ring = _ring(src, body[: spec_end + 1], off, field_override)
            rest = body[spec_end + 1:]
            gens = []
            if rest.strip():
                inner, ioff, _, _ = _paren_group(src, rest, off + spec_end + 1)
                gens = _parse_gens(src, ring, inner, ioff)
            doc.varieties[kw] = VarietySpec(ring, Ideal(ring, gens), kw)
        elif kw in ("alpha", "beta", "gamma"):
            inner, ioff, _, _ = _paren_group(src, body, off)
            doc.correspondences[kw] = (inner, ioff)
        elif kw == "sentence":
            line, col = src.position(off)
            doc.sentences.append(parse_sentence(body, line, col))
        else:
            raise src.error(f"unknown statement {kw!r}", off - len(kw), kw)
    return doc


def _need_ring(src, doc, off):
    if doc.ring is None:
        raise src.error("declare a ring first", off, "")


def correspondences_of(doc: InputDocument, text: str):
    """Build the declared correspondences ``alpha: source -> middle`` and so on."""
    src = _Source(text)
    chain = [("alpha", "source", "middle"), ("beta", "middle", "target"), ("gamma", "target", "last")]
    out = {}
    for name, a, b in chain:
        if name not in doc.correspondences:
            continue
        if a not in doc.varieties or b not in doc.varieties:
            raise ValidationError(f"{name} needs varieties {a} and {b}")
        X, Y = doc.varieties[a], doc.varieties[b]
        inner, ioff = doc.correspondences[name]
        gens = _parse_gens(src, product_ring(X, Y), inner, ioff)
        out[name] = correspondence_from_ideal(X, Y, gens)
    return out


# ---------------------------------------------------------------------------
# commands


def _first_ideal(doc):
    if not doc.ideals:
        raise ValidationError("input declares no ideal")
    return doc.ideals[0]


def _cycles(doc: InputDocument, count: int):
    amb = doc.ambient_space()
    out = []
    for terms in doc.cycles:
        cyc = Cycle(amb, [])
        for I, m in terms:
            cyc = cyc + associated_cycle(I, amb).scale(m)
        out.append(cyc)
    for I in doc.ideals:
        out.append(associated_cycle(I, amb))
    if len(out) < count:
        raise ValidationError(f"command needs {count} cycles, input has {len(out)}")
    return out[:count]


def cmd_gb(job, doc, text):
    I = _first_ideal(doc)
    order = order_from_name(job.order)
    basis = I.groebner(order)
    return {"ring": repr(I.ring), "order": job.order,
            "basis": [g.to_str(order) for g in basis], "size": len(basis)}, True


def cmd_hilbert(job, doc, text):
    return hilbert(_first_ideal(doc)).to_json(), True


def cmd_cycle(job, doc, text):
    cyc = associated_cycle(_first_ideal(doc), doc.ambient_space())
    out = cyc.to_json()
    out["text"] = str(cyc)
    out["complexity"] = complexity(cyc).to_json()
    out["discarded"] = [[str(g) for g in c.generators()] for c in cyc.discarded]
    return out, True


def cmd_mult(job, doc, text):
    if len(doc.ideals) < 2 or doc.point is None:
        raise ValidationError("mult needs two ideals and a point")
    comps = []
    for I in doc.ideals[:2]:
        ps = minimal_primes(I)
        if len(ps) != 1 or not I.contains_ideal(ps[0].ideal):
            raise ValidationError("mult expects prime ideals V and W")
        comps.append(ps[0])
    P = minimal_primes(doc.point)
    if len(P) != 1:
        raise ValidationError("the point ideal must be prime")
    rep = intersection_multiplicity(comps[0], comps[1], P[0], job.method)
    return rep.to_json(), True


def cmd_product(job, doc, text):
    a, b = _cycles(doc, 2)
    prod = intersection_product(a, b, doc.ambient_space())
    out = prod.to_json()
    out["text"] = str(prod)
    out["degree"] = prod.degree()
    return out, True


def cmd_pushforward(job, doc, text):
    (w,) = _cycles(doc, 1)
    if not doc.keep:
        raise ValidationError("pushforward needs a 'keep' statement")
    img = pushforward(w, doc.keep)
    out = img.to_json()
    out["text"] = str(img)
    return out, True


def cmd_compose(job, doc, text):
    cs = correspondences_of(doc, text)
    if "alpha" not in cs or "beta" not in cs:
        raise ValidationError("compose needs alpha and beta")
    res = compose(cs["alpha"], cs["beta"])
    return res.to_json(), True


def cmd_laws(job, doc, text):
    cs = correspondences_of(doc, text)
    chain = tuple(cs[k] for k in ("alpha", "beta", "gamma") if k in cs)
    if not chain:
        raise ValidationError("laws needs at least alpha")
    rep = category_laws_check([chain])
    return rep.to_json(), rep.passed


def cmd_los(job, doc, text):
    if not doc.sentences:
        raise ValidationError("los needs a sentence")
    sample = job.sample()
    reports = [los_verdict(s, sample) for s in doc.sentences]
    ok = job.expect is None or all(r.verdict == job.expect for r in reports)
    return {"reports": [r.to_json() for r in reports]}, ok


def cmd_transfer(job, inputs):
    from .transfer import load_corpus, check_commutation, summarize

    instances = []
    for path in inputs:
        instances.extend(load_corpus(path))
    reports = [check_commutation(inst, job.sample(), check_bad_primes=False) for inst in instances]
    summary = summarize(reports)
    ok = summary["cofinite-holds"] == len(reports) and summary["disagreements_at_good_primes"] == 0
    return {"summary": summary, "reports": [r.to_json() for r in reports]}, ok


def cmd_survey(job, inputs):
    from .corpus import load
    from .transfer import complexity_survey

    if inputs:
        corpus = []
        for path in inputs:
            with open(path) as fh:
                corpus.extend(json.load(fh))
    else:
        corpus = load("survey")
    tables = [complexity_survey(corpus)]
    tables += [complexity_survey(corpus, p) for p in job.survey_primes]
    identical = all(t.table == tables[0].table for t in tables)
    monotone = all(t.monotone() for t in tables)
    out = {"identical_across_fields": identical, "monotone": monotone,
           "tables": [t.to_json() for t in tables]}
    return out, identical and monotone


_TEXT_COMMANDS = {
    "gb": cmd_gb, "hilbert": cmd_hilbert, "cycle": cmd_cycle, "mult": cmd_mult,
    "product": cmd_product, "pushforward": cmd_pushforward, "compose": cmd_compose,
    "laws": cmd_laws, "los": cmd_los,
}


def run(job: JobConfig):
    """Execute a job; returns ``(exit status, report dict)``."""
    try:
        with use_limits(job.limits):
            if job.command in ("transfer", "survey"):
                fn = cmd_transfer if job.command == "transfer" else cmd_survey
                report, ok = fn(job, job.inputs)
            else:
                if len(job.inputs) != 1:
                    raise ValidationError(f"{job.command} takes exactly one input file")
                with open(job.inputs[0]) as fh:
                    text = fh.read()
                doc = parse_input(text, job.field_spec)
                report, ok = _TEXT_COMMANDS[job.command](job, doc, text)
    except UltracyclesError as exc:
        return exc.exit_status, {"error": exc.code, "message": str(exc),
                                 "data": {k: _jsonable(v) for k, v in exc.data.items()}}
    except OSError as exc:
        return EXIT_INPUT, {"error": "cli.InputError", "message": str(exc)}
    report = {"command": job.command, "ok": ok, **report}
    return (EXIT_OK if ok else EXIT_VERDICT), report


def _jsonable(v):
    try:
        json.dumps(v)
        return v
    except TypeError:
        return str(v)


# ---------------------------------------------------------------------------
# text rendering


def render_text(command: str, report: dict) -> str:
    if "error" in report:
        return f"error {report['error']}: {report['message']}"
    lines = []
    if command == "transfer":
        lines.append(report["summary"]["summary"])
        lines.append(f"{'instance':<24} {'kind':<22} {'verdict':<18} bad primes")
        for r in report["reports"]:
            bad = ",".join(map(str, r["bad_primes"])) or "-"
            lines.append(f"{r['instance']:<24} {r['kind']:<22} {r['verdict']:<18} {bad}")
    elif command == "survey":
        for t in report["tables"]:
            lines.append(f"field {t['field']}")
            ns = t["n_values"]
            lines.append("d\\n " + " ".join(f"{n:>4}" for n in ns))
            for d in t["d_values"]:
                lines.append(f"{d:>3} " + " ".join(f"{t['table'][f'{d},{n}']:>4}" for n in ns))
        lines.append(f"identical across fields: {report['identical_across_fields']}")
        lines.append(f"monotone: {report['monotone']}")
    elif command == "los":
        for r in report["reports"]:
            exc = ",".join(map(str, r["exceptions"])) or "-"
            lines.append(f"{r['subject']}: {r['verdict']} (exceptions {exc}, densities "
                         f"{r['densities']['holds']:.2f}/{r['densities']['fails']:.2f})")
    elif command == "laws":
        for c in report["checks"]:
            lines.append(f"{'ok  ' if c['passed'] else 'FAIL'} {c['law']} {c['detail']}")
    elif command == "gb":
        lines.extend(report["basis"])
    elif "text" in report:
        lines.append(report["text"])
    else:
        lines.append(json.dumps(report, indent=2, sort_keys=True))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument handling


def _load_config(path: str | None) -> dict:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ultracycles", description="Exact cycle computations and prime-by-prime transfer checks.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("inputs", nargs="*", help="input file(s); corpus JSON for transfer/survey")
    ap.add_argument("--config", help=f"JSON config file (default from ${CONFIG_ENV})")
    ap.add_argument("--field", help="override the field, e.g. Q or GF(101)")
    ap.add_argument("--order", help="monomial order: grevlex or lex")
    ap.add_argument("--method", help="multiplicity method: auto, cohen-macaulay or koszul")
    ap.add_argument("--pair-cap", type=int)
    ap.add_argument("--degree-cap", type=int, help="univariate factorization degree bound")
    ap.add_argument("--depth", type=int, help="quantifier depth bound")
    ap.add_argument("--prime-bound", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--primes", type=int, help="number of primes in the sample")
    ap.add_argument("--above", type=int, help="sample primes strictly above this")
    ap.add_argument("--survey-primes", help="comma separated primes for the survey")
    ap.add_argument("--expect", help="expected Łoś verdict (los only)")
    ap.add_argument("-o", "--output", help="write the report here instead of stdout")
    ap.add_argument("--text", action="store_true", help="human-readable output")
    return ap


def job_from_args(args) -> JobConfig:
    cfg = _load_config(args.config)
    limits = dict(cfg.get("limits", {}))
    for flag, name in (("pair_cap", "pair_cap"), ("degree_cap", "factor_degree"),
                       ("depth", "quantifier_depth"), ("prime_bound", "prime_bound"),
                       ("seed", "seed")):
        v = getattr(args, flag)
        if v is not None:
            limits[name] = v
    sample = cfg.get("sample", {})
    survey = cfg.get("survey_primes", (101, 103, 107, 109, 113))
    if args.survey_primes:
        survey = [int(p) for p in args.survey_primes.split(",")]
    try:
        lim = Limits(**limits)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad limits: {exc}") from None
    return JobConfig(
        command=args.command,
        inputs=list(args.inputs),
        field_spec=args.field or cfg.get("field"),
        order=args.order or cfg.get("order", "grevlex"),
        limits=lim,
        sample_count=args.primes or sample.get("count", 50),
        sample_above=args.above if args.above is not None else sample.get("above", 3),
        survey_primes=tuple(survey),
        method=args.method or cfg.get("method", "auto"),
        expect=args.expect,
        output=args.output or cfg.get("output"),
        text=args.text or cfg.get("format") == "text",
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = job_from_args(args)
    except (UltracyclesError, OSError, ValueError) as exc:
        code = getattr(exc, "code", "cli.ConfigError")
        print(json.dumps({"error": code, "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    status, report = run(job)
    if job.text:
        out = render_text(job.command, report)
    else:
        out = json.dumps(report, indent=2, sort_keys=True)
    if job.output:
        with open(job.output, "w") as fh:
            fh.write(out + "\n")
    else:
        stream = sys.stderr if "error" in report else sys.stdout
        print(out, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
