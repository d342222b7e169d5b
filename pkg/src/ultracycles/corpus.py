"""Deterministic fixture corpora: Gröbner ideals, curve pairs, Koszul data, maps, transfer instances.

Everything is generated from a seeded ``random.Random`` so the JSON files in
``corpora/`` can be regenerated byte for byte with ``python3 -m ultracycles.corpus``.
"""

from __future__ import annotations

import itertools
import json
import random
from importlib import resources
from pathlib import Path

CORPUS_FILES = {
    "groebner": "groebner.json",
    "bezout": "bezout.json",
    "koszul": "koszul.json",
    "maps": "maps.json",
    "pushforward": "pushforward.json",
    "survey": "survey.json",
}

TRANSFER_KINDS = ("associated_cycle", "local_length", "koszul", "intersection_product",
                  "pushforward", "compose", "hilbert_degree")


# ---------------------------------------------------------------------------
# random polynomial text


def monomials(variables, degree: int, min_degree: int = 0):
    n = len(variables)
    out = []
    for d in range(min_degree, degree + 1):
        for e in itertools.product(range(d + 1), repeat=n):
            if sum(e) == d:
                out.append(e)
    return out


def monomial_text(variables, e) -> str:
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts) or "1"


def poly_text(variables, terms) -> str:
    """``terms`` is a list of ``(coefficient, exponent)``; zero coefficients are skipped."""
    out = []
    for c, e in terms:
        if c == 0:
            continue
        m = monomial_text(variables, e)
        if m == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = m
        else:
            body = f"{abs(c)}*{m}"
        sign = "-" if c < 0 else "+"
        out.append((sign, body))
    if not out:
        return "0"
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def random_poly(rng: random.Random, variables, degree: int, nterms: int | None = None,
                coeffs: int = 5, homogeneous: bool = False, min_degree: int = 0,
                leading=None) -> str:
    """Random polynomial; ``leading`` forces the given exponent to coefficient 1."""
    if homogeneous:
        pool = monomials(variables, degree, degree)
    else:
        pool = monomials(variables, degree, min_degree)
    if nterms is None or nterms >= len(pool):
        chosen = pool
    else:
        chosen = rng.sample(pool, nterms)
    terms = []
    for e in chosen:
        c = 0
        while c == 0:
            c = rng.randint(-coeffs, coeffs)
        terms.append((c, e))
    if leading is not None:
        terms = [(c, e) for c, e in terms if e != tuple(leading)] + [(1, tuple(leading))]
    terms.sort(key=lambda t: (-sum(t[1]), [-k for k in t[1]]))
    return poly_text(variables, terms)


def _ring(field: str, variables) -> str:
    return f"{field}[{','.join(variables)}]"


# ---------------------------------------------------------------------------
# Gröbner corpus


_CLASSIC_IDEALS = [
    ("Q[x,y,z]", ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]),
    ("Q[x,y,z]", ["x*z - y^2", "y*w - z^2", "x*w - y*z"], ["x", "y", "z", "w"]),
    ("Q[x,y]", ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"]),
    ("Q[x,y,z]", ["x^2 + y^2 + z^2 - 1", "x^2 - y", "z - x*y"]),
    ("Q[x,y]", ["y^2 - x^3 - x", "x^6 - y"]),
    ("Q[x,y,z]", ["x^5 + y^4 + z^3 - 1", "x^3 + y^3 + z^2 - 1"]),
    ("Q[x,y]", ["x^4*y^2 - 3*x*y + 1", "x^2 - y^3"]),
]


def groebner_corpus(seed: int = 11, total: int = 32) -> list[dict]:
    rng = random.Random(seed)
    out = []
    for item in _CLASSIC_IDEALS:
        if len(item) == 3:
            _, gens, names = item
            out.append({"ring": _ring("Q", names), "ideal": gens})
        else:
            out.append({"ring": item[0], "ideal": item[1]})
    names = ["x", "y", "z", "w"]
    while len(out) < total:
        n = rng.choice([2, 2, 3, 3, 4])
        vs = names[:n]
        k = rng.randint(2, 3) if n > 2 else 2
        if n == 2:
            degs = [rng.randint(2, 6), rng.randint(1, 4)]
            size = 4
        elif n == 3:
            degs = [rng.randint(1, 3) for _ in range(k)]
            size = 3
        else:
            degs = [rng.randint(1, 2) for _ in range(k)]
            size = 3
        gens = [random_poly(rng, vs, d, nterms=size, coeffs=4, min_degree=0) for d in degs]
        out.append({"ring": _ring("Q", vs), "ideal": gens})
    return out


# ---------------------------------------------------------------------------
# plane curve pairs for Bézout


def bezout_pairs(field: str = "Q", count: int = 24, seed: int = 5) -> list[dict]:
    rng = random.Random(seed)
    vs = ["x", "y", "z"]
    out = []
    for _ in range(count):
        d1, d2 = rng.randint(1, 4), rng.randint(1, 4)
        f = random_poly(rng, vs, d1, homogeneous=True, coeffs=6)
        g = random_poly(rng, vs, d2, homogeneous=True, coeffs=6)
        out.append({"ring": _ring(field, vs), "f": f, "g": g, "degrees": [d1, d2]})
    return out


# ---------------------------------------------------------------------------
# zero-dimensional complete intersections at a point


def koszul_corpus(seed: int = 7, count: int = 30) -> list[dict]:
    """Sequences ``f_1..f_n`` in ``n`` variables vanishing at a rational point."""
    rng = random.Random(seed)
    out = []
    fixed = [
        (["x", "y"], ["y - x^2", "y"], [0, 0]),
        (["x", "y"], ["y^2 - x^3", "x"], [0, 0]),
        (["x", "y"], ["y^2 - x^3", "y - x^2"], [0, 0]),
        (["x", "y"], ["x^2 - y^3", "x*y - y^2 + x^3"], [0, 0]),
        (["x", "y", "z"], ["x^2 - y", "y^2 - z", "z^2 - x*y"], [0, 0, 0]),
    ]
    for vs, seq, pt in fixed:
        out.append(_koszul_record(vs, seq, pt))
    while len(out) < count:
        n = rng.choice([2, 2, 2, 3])
        vs = ["x", "y", "z"][:n]
        seq = []
        for i in range(n):
            lo = rng.randint(1, 3 if n == 2 else 2)
            seq.append(random_poly(rng, vs, lo + rng.randint(0, 1), nterms=3, coeffs=3,
                                   min_degree=lo))
        if not _zero_dimensional(vs, seq):
            continue
        pt = [rng.randint(-2, 2) for _ in vs]
        seq = [_translate(s, vs, pt) for s in seq]
        out.append(_koszul_record(vs, seq, pt))
    return out


def _zero_dimensional(variables, texts) -> bool:
    from .groebner import Ideal
    from .poly import PolyRing

    ring = PolyRing("Q", variables)
    return Ideal(ring, [ring(t) for t in texts]).is_zero_dimensional()


def _translate(text: str, variables, point) -> str:
    """Move a polynomial so that its behaviour at the origin happens at ``point``."""
    from .poly import PolyRing

    ring = PolyRing("Q", variables)
    f = ring(text)
    images = [ring.gen(i) - c for i, c in enumerate(point)]
    return str(f.compose(images))


def _koszul_record(vs, seq, pt) -> dict:
    point = [f"{v} - {c}" if c >= 0 else f"{v} + {-c}" for v, c in zip(vs, pt)]
    point = [p.replace(" - 0", "") for p in point]
    return {"ring": _ring("Q", vs), "sequence": seq, "point": point}


# ---------------------------------------------------------------------------
# polynomial maps and correspondences


def map_pairs(seed: int = 3, count: int = 22) -> list[dict]:
    """Composable polynomial maps ``f: A^m -> A^n`` and ``g: A^n -> A^k``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        m, n, k = rng.choice([(1, 1, 1), (1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 1), (1, 1, 2)])
        X = [f"a{j}" for j in range(m)]
        Y = [f"b{j}" for j in range(n)]
        Z = [f"c{j}" for j in range(k)]
        f = [random_poly(rng, X, rng.randint(1, 2), nterms=2, coeffs=3) for _ in Y]
        g = [random_poly(rng, Y, rng.randint(1, 2), nterms=2, coeffs=3) for _ in Z]
        out.append({"X": X, "Y": Y, "Z": Z, "f": f, "g": g})
    return out


def correspondence_triples(seed: int = 4, count: int = 12) -> list[dict]:
    """Composable triples on affine lines; some steps are degree-2 or degree-3 correspondences.

    A step is either the graph of a polynomial map (``{"map": text}``) or a
    multivalued correspondence ``V(g)`` with ``g`` monic in the target variable.
    """
    rng = random.Random(seed)
    out = []
    for i in range(count):
        steps = []
        for s in range(3):
            src, dst = f"t{s}", f"t{s + 1}"
            multi = (i < 5 and s == i % 3) or rng.random() < 0.25
            if multi:
                d = rng.choice([2, 2, 3])
                lower = random_poly(rng, [src, dst], d - 1, nterms=2, coeffs=3)
                steps.append({"ideal": f"{dst}^{d} - ({lower})"})
            else:
                steps.append({"map": random_poly(rng, [src], rng.randint(1, 2), nterms=2, coeffs=3)})
        out.append({"variables": [f"t{s}" for s in range(4)], "steps": steps})
    return out


def pushforward_corpus(seed: int = 9, count: int = 12) -> list[dict]:
    """Cycles in A^2 or A^3 whose components are monic in the dropped variables."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        if i % 3 == 2:
            vs = ["x", "y", "z"]
            d = rng.randint(2, 3)
            g1 = f"y^{d} - ({random_poly(rng, ['x', 'y'], d - 1, nterms=2, coeffs=3)})"
            g2 = f"z - ({random_poly(rng, ['x', 'y'], 2, nterms=2, coeffs=3)})"
            out.append({"ring": _ring("Q", vs), "cycle": [[[g1, g2], 1]], "keep": ["x"]})
        else:
            vs = ["x", "y"]
            d = rng.randint(2, 4)
            g = f"y^{d} - ({random_poly(rng, vs, d - 1, nterms=3, coeffs=3)})"
            m = rng.choice([1, 1, 2, -1])
            out.append({"ring": _ring("Q", vs), "cycle": [[[g], m]], "keep": ["x"]})
    return out


# ---------------------------------------------------------------------------
# complexity survey corpus


def _line_through(p, q):
    """Homogeneous line through two points of P^2 (cross product)."""
    a = p[1] * q[2] - p[2] * q[1]
    b = p[2] * q[0] - p[0] * q[2]
    c = p[0] * q[1] - p[1] * q[0]
    return [(a, (1, 0, 0)), (b, (0, 1, 0)), (c, (0, 0, 1))]


def _mul_lin(l1, l2):
    out = {}
    for c1, e1 in l1:
        for c2, e2 in l2:
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return [(c, e) for e, c in sorted(out.items(), reverse=True)]


def _add(a, b, s=1, t=1):
    out = {}
    for c, e in a:
        out[e] = out.get(e, 0) + s * c
    for c, e in b:
        out[e] = out.get(e, 0) + t * c
    return [(c, e) for e, c in sorted(out.items(), reverse=True) if c]


def _pencil_conic(pts, s, t):
    """Member ``s·L12·L34 + t·L13·L24`` of the pencil of conics through four points."""
    p1, p2, p3, p4 = pts
    A = _mul_lin(_line_through(p1, p2), _line_through(p3, p4))
    B = _mul_lin(_line_through(p1, p3), _line_through(p2, p4))
    return _add(A, B, s, t)


def survey_corpus(seed: int = 2) -> list[dict]:
    """Pairs in P^2 (and their cones in P^3) whose intersections are rational and transverse."""
    rng = random.Random(seed)
    vs = ["x0", "x1", "x2"]
    pairs = []
    # two lines
    while len(pairs) < 3:
        p, q, r = ([rng.randint(-3, 3) for _ in range(2)] + [1] for _ in range(3))
        if len({tuple(p), tuple(q), tuple(r)}) < 3 or _collinear(p, q, r):
            continue
        pairs.append((poly_text(vs, _line_through(p, q)), poly_text(vs, _line_through(p, r))))
    # line and conic meeting in two rational points
    for _ in range(3):
        pts = _four_points(rng)
        conic = _pencil_conic(pts, 1, rng.choice([2, 3, -2]))
        pairs.append((poly_text(vs, _line_through(pts[0], pts[1])), poly_text(vs, conic)))
    # two conics of one pencil: four rational points
    for _ in range(4):
        pts = _four_points(rng)
        c1 = _pencil_conic(pts, 1, rng.choice([2, 3]))
        c2 = _pencil_conic(pts, 1, rng.choice([-1, -2]))
        pairs.append((poly_text(vs, c1), poly_text(vs, c2)))
    out = []
    for a, b in pairs:
        out.append({"n": 2, "a": [[[a], 1]], "b": [[[b], 1]]})
    for a, b in pairs:
        out.append({"n": 3, "a": [[[a], 1]], "b": [[[b], 1]]})
    # planes in P^3: a line
    out.append({"n": 3, "a": [[["x0 - x3"], 1]], "b": [[["x1 + 2*x2"], 1]]})
    return out


def _collinear(a, b, c) -> bool:
    return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])) == 0


def _four_points(rng):
    """Four points in general position with small distinct coordinates."""
    while True:
        pts = [[rng.randint(-3, 3), rng.randint(-3, 3), 1] for _ in range(4)]
        if not any(_collinear(a, b, c) for a, b, c in itertools.combinations(pts, 3)):
            return pts


# ---------------------------------------------------------------------------
# transfer instances


def _inst(kind, payload, name):
    return {"kind": kind, "name": name, "payload": payload, "options": {}}


def transfer_corpus(seed: int = 13, per_kind: int = 20) -> list[dict]:
    rng = random.Random(seed)
    out = []
    out += _associated_cycle_instances(rng, per_kind)
    out += _local_length_instances(rng, per_kind)
    out += _koszul_instances(rng, per_kind)
    out += _product_instances(rng, per_kind)
    out += _pushforward_instances(rng, per_kind)
    out += _compose_instances(rng, per_kind)
    out += _hilbert_instances(rng, per_kind)
    return out


def _associated_cycle_instances(rng, count):
    fixed = [
        ("Q[x]", "affine", ["x^2"]),
        ("Q[x]", "affine", ["x^2 - 2"]),
        ("Q[x,y]", "affine", ["x^2 - 2*y^2"]),
        ("Q[x,y]", "affine", ["x*y"]),
        ("Q[x,y]", "affine", ["x^2", "x*y"]),
        ("Q[x,y]", "affine", ["y^2 - x^3"]),
        ("Q[x,y,z]", "projective", ["x^2", "y^2"]),
        ("Q[x,y,z]", "projective", ["x^2 + y^2 - z^2", "x*y - z^2"]),
        ("Q[x,y,z]", "projective", ["x^3 + y^3 + z^3"]),
        ("Q[x,y]", "affine", ["(x^2 - 3)^2", "y"]),
    ]
    out = [_inst("associated_cycle", {"ring": r, "ambient": a, "ideal": g}, f"cycle-{i}")
           for i, (r, a, g) in enumerate(fixed)]
    i = len(out)
    while len(out) < count:
        a = rng.choice([2, 3, 5, 6, 7, 10, 11, -1, -3])
        k = rng.randint(1, 3)
        shape = rng.randrange(4)
        if shape == 0:
            g = [f"(x^2 - {a}*y^2)^{k}"] if k > 1 else [f"x^2 - {a}*y^2"]
        elif shape == 1:
            g = [f"(x^3 - {a})*(y - {rng.randint(1, 5)})"]
        elif shape == 2:
            g = [f"y^2 - x^3 - {a}*x", f"x^{k}"]
        else:
            g = [f"x^2 - {a}", f"y^{k} - x"]
        out.append(_inst("associated_cycle", {"ring": "Q[x,y]", "ambient": "affine", "ideal": g},
                         f"cycle-{i}"))
        i += 1
    return out


def _local_length_instances(rng, count):
    fixed = [
        (["x^2", "x*y", "y^3"], ["x", "y"]),
        (["y - x^2", "y"], ["x", "y"]),
        (["x^2 - 25"], ["x - 5"]),
        (["y^2 - x^3", "y - x^2"], ["x", "y"]),
        (["x^3", "y^2 - 2*x"], ["x", "y"]),
    ]
    out = []
    for i, (I, P) in enumerate(fixed):
        ring = "Q[x]" if all("y" not in g for g in I + P) else "Q[x,y]"
        out.append(_inst("local_length", {"ring": ring, "ideal": I, "prime": P}, f"length-{i}"))
    i = len(out)
    while len(out) < count:
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        k, m = rng.randint(1, 3), rng.randint(1, 3)
        c = rng.randint(1, 4)
        X = f"(x - {a})" if a >= 0 else f"(x + {-a})"
        Y = f"(y - {b})" if b >= 0 else f"(y + {-b})"
        if rng.random() < 0.5:
            I = [f"{Y}^{m} - {c}*{X}^{k + 1}", f"{X}^{k}*{Y}"]
        else:
            I = [f"{Y} - {X}^{k}*{c}", f"{X}^{m + 1}*({X} - {c})"]
        P = [X.strip("()"), Y.strip("()")]
        out.append(_inst("local_length", {"ring": "Q[x,y]", "ideal": I, "prime": P}, f"length-{i}"))
        i += 1
    return out


def _koszul_instances(rng, count):
    out = []
    fixed = [
        ({"ring": "Q[x,y]", "sequence": ["y - x^2", "y"], "point": ["x", "y"]}),
        ({"ring": "Q[x,y]", "coefficients": ["y - x^2"], "sequence": ["y"], "point": ["x", "y"]}),
        ({"ring": "Q[x,y]", "sequence": ["y^2 - x^3", "y - 2*x^2"], "point": ["x", "y"]}),
        ({"ring": "Q[x]", "sequence": ["x^3 - 3*x^2"], "point": ["x"]}),
        ({"ring": "Q[x,y]", "coefficients": ["x*y"], "sequence": ["x + y"], "point": ["x", "y"]}),
    ]
    for i, pl in enumerate(fixed):
        out.append(_inst("koszul", pl, f"koszul-{i}"))
    base = koszul_corpus(seed=rng.randint(0, 10 ** 6), count=2 * count)
    for rec in base:
        if len(out) >= count:
            break
        if rec["ring"] == "Q[x,y]":
            out.append(_inst("koszul", rec, f"koszul-{len(out)}"))
    return out


def _product_instances(rng, count):
    vs = ["x", "y", "z"]
    out = []
    fixed = [
        (["x^2 + y^2 - z^2"], ["x*y - z^2"]),
        (["y*z - x^2"], ["y - 17*z"]),
        (["y*z - x^2"], ["y"]),
        (["x^2 - 2*z^2"], ["y"]),
        (["x^3 + y^3 - z^3"], ["x + y - z"]),
    ]
    for i, (a, b) in enumerate(fixed):
        out.append(_inst("intersection_product",
                         {"ring": "Q[x,y,z]", "ambient": "projective", "a": [[a, 1]], "b": [[b, 1]]},
                         f"product-{i}"))
    while len(out) < count:
        d1, d2 = rng.randint(1, 3), rng.randint(1, 2)
        f = random_poly(rng, vs, d1, homogeneous=True, nterms=3, coeffs=4)
        g = random_poly(rng, vs, d2, homogeneous=True, nterms=3, coeffs=4)
        pl = {"ring": "Q[x,y,z]", "ambient": "projective", "a": [[[f], 1]], "b": [[[g], 1]]}
        out.append(_inst("intersection_product", pl, f"product-{len(out)}"))
    return out


def _pushforward_instances(rng, count):
    out = []
    for rec in pushforward_corpus(seed=rng.randint(0, 10 ** 6), count=count - 3):
        rec = dict(rec, ambient="affine")
        out.append(_inst("pushforward", rec, f"pushforward-{len(out)}"))
    fixed = [
        {"ring": "Q[x,y]", "ambient": "affine", "cycle": [[["y^2 - x"], 1]], "keep": ["x"]},
        {"ring": "Q[x,y]", "ambient": "affine", "cycle": [[["y^2 - 3*x^3 - 1"], 2]], "keep": ["x"]},
        {"ring": "Q[x,y]", "ambient": "affine", "cycle": [[["x - 1", "y^2 - 5"], 1]], "keep": ["x"]},
    ]
    for pl in fixed:
        out.append(_inst("pushforward", pl, f"pushforward-{len(out)}"))
    return out


def _compose_instances(rng, count):
    out = []
    for i in range(count):
        a = random_poly(rng, ["x"], rng.randint(1, 2), nterms=2, coeffs=3)
        if i % 3 == 0:
            d = rng.choice([2, 3])
            lower = random_poly(rng, ["x", "y"], d - 1, nterms=2, coeffs=3)
            alpha = [f"y^{d} - ({lower})"]
        else:
            alpha = [f"y - ({a})"]
        b = random_poly(rng, ["y"], rng.randint(1, 2), nterms=2, coeffs=3)
        beta = [f"z - ({b})"]
        pl = {
            "source": {"variables": ["x"]},
            "middle": {"variables": ["y"]},
            "target": {"variables": ["z"]},
            "alpha": alpha,
            "beta": beta,
        }
        out.append(_inst("compose", pl, f"compose-{i}"))
    return out


def _hilbert_instances(rng, count):
    out = []
    fixed = [
        ("Q[x,y,z]", ["x^4 + y^4 - z^4 + x*y*z^2"]),
        ("Q[x,y,z,w]", ["x*z - y^2", "y*w - z^2", "x*w - y*z"]),
        ("Q[x,y,z,w]", ["x^2 + y^2 - z*w", "x*y - w^2"]),
        ("Q[x,y,z]", ["x*y - z^2", "x^3 - y*z^2"]),
    ]
    for r, g in fixed:
        out.append(_inst("hilbert_degree", {"ring": r, "ideal": g}, f"hilbert-{len(out)}"))
    while len(out) < count:
        n = rng.choice([1, 2, 3])
        vs = ["x", "y", "z", "w"][: n + 1]
        d = rng.randint(1, 6)
        f = random_poly(rng, vs, d, homogeneous=True, nterms=4, coeffs=7,
                        leading=(d,) + (0,) * n)
        out.append(_inst("hilbert_degree", {"ring": _ring("Q", vs), "ideal": [f]},
                         f"hilbert-{len(out)}"))
    return out


# ---------------------------------------------------------------------------
# files


def build_all() -> dict:
    return {
        "groebner": groebner_corpus(),
        "bezout": {"Q": bezout_pairs("Q"), "GF(101)": bezout_pairs("GF(101)", seed=6)},
        "koszul": koszul_corpus(),
        "maps": {"pairs": map_pairs(), "triples": correspondence_triples()},
        "pushforward": pushforward_corpus(),
        "survey": survey_corpus(),
    }


def corpus_dir() -> Path:
    return Path(str(resources.files("ultracycles") / "corpora"))


def transfer_path(kind: str) -> Path:
    return corpus_dir() / f"transfer_{kind}.json"


def load(name: str):
    if name.startswith("transfer_"):
        path = corpus_dir() / f"{name}.json"
    else:
        path = corpus_dir() / CORPUS_FILES[name]
    with open(path) as fh:
        return json.load(fh)


def write_all(directory: Path | None = None) -> list[Path]:
    directory = Path(directory) if directory else corpus_dir()
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, data in build_all().items():
        path = directory / CORPUS_FILES[name]
        with open(path, "w") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
        paths.append(path)
    instances = transfer_corpus()
    for kind in TRANSFER_KINDS:
        path = directory / f"transfer_{kind}.json"
        with open(path, "w") as fh:
            json.dump([d for d in instances if d["kind"] == kind], fh, indent=1)
            fh.write("\n")
        paths.append(path)
    return paths


if __name__ == "__main__":
    for p in write_all():
        print(p)
