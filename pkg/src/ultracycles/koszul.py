"""Koszul complexes and intersection multiplicities by reduction to the diagonal.

The multiplicity of a component ``P`` of ``V ∩ W`` is the Euler
characteristic of the Koszul complex of the diagonal forms ``x_i - y_i`` on
``k[x]/I_V ⊗ k[y]/I_W`` localized at the diagonal copy of ``P``.

``H_0`` of that complex is ``k[x]/(I_V + I_W)``, so its length is a local
length in the original ring.  Higher homology vanishes when the product is
Cohen-Macaulay at ``P`` (complete intersections, curves, points); otherwise,
for zero-dimensional ``P``, each ``H_i`` is computed with module Gröbner bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cycles import Ambient, Cycle, component_degree, projective_minimal_primes
from .decompose import PrimeComponent, local_length, minimal_primes, primary_component
from .errors import (
    AmbientMismatch,
    ImproperIntersection,
    MixedContext,
    NotFiniteLength,
    NotMinimalPrime,
    UnsupportedShape,
    ValidationError,
)
from .groebner import Ideal, buchberger
from .poly import BlockOrder, Poly, PolyRing


# ---------------------------------------------------------------------------
# the complex


@dataclass
class KoszulComplex:
    """Koszul complex of ``sequence`` over ``A/J`` (``J`` may be the zero ideal).

    ``bases[i]`` lists the wedge basis of the i-th module as increasing index
    tuples; ``differentials[i]`` is the matrix of ``d_i: K_i -> K_{i-1}``
    as a list of rows (``len(bases[i-1])`` rows, ``len(bases[i])`` columns).
    """

    ring: PolyRing
    sequence: list
    coefficients: Ideal
    bases: list = field(default_factory=list)
    differentials: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.sequence)

    def rank(self, i: int) -> int:
        return len(self.bases[i]) if 0 <= i <= self.length else 0

    def entry(self, i: int, row: int, col: int) -> Poly:
        return self.differentials[i][row][col]

    def to_json(self) -> dict:
        return {
            "sequence": [str(f) for f in self.sequence],
            "coefficients": [str(g) for g in self.coefficients.groebner()],
            "ranks": [self.rank(i) for i in range(self.length + 1)],
        }


def build_koszul(ring: PolyRing, sequence, coefficients: Ideal | None = None) -> KoszulComplex:
    """Koszul complex of ``sequence`` tensored with ``ring / coefficients``."""
    seq = [ring(f) if not isinstance(f, Poly) else f for f in sequence]
    if not seq:
        raise ValidationError("Koszul complex needs a nonempty sequence")
    for f in seq:
        if f.ring != ring:
            raise MixedContext(f"{f.ring} vs {ring}")
    J = coefficients if coefficients is not None else Ideal(ring)
    if J.ring != ring:
        raise MixedContext(f"{J.ring} vs {ring}")
    r = len(seq)
    seq = [J.normal_form(f) for f in seq]
    bases = [list(itertools.combinations(range(r), i)) for i in range(r + 1)]
    diffs = {}
    for i in range(1, r + 1):
        index = {s: k for k, s in enumerate(bases[i - 1])}
        mat = [[ring.zero() for _ in bases[i]] for _ in bases[i - 1]]
        for col, S in enumerate(bases[i]):
            for pos, s in enumerate(S):
                T = S[:pos] + S[pos + 1:]
                term = seq[s] if pos % 2 == 0 else -seq[s]
                mat[index[T]][col] = mat[index[T]][col] + term
        diffs[i] = mat
    K = KoszulComplex(ring, seq, J, bases, diffs)
    verify_complex(K)
    return K


def _matmul(a, b, ring):
    out = []
    for row in a:
        out.append([
            sum((row[k] * b[k][j] for k in range(len(b))), ring.zero())
            for j in range(len(b[0]) if b else 0)
        ])
    return out


def verify_complex(K: KoszulComplex) -> None:
    """Check ``d_{i-1} d_i = 0`` modulo the coefficient ideal."""
    for i in range(2, K.length + 1):
        prod = _matmul(K.differentials[i - 1], K.differentials[i], K.ring)
        for row in prod:
            for e in row:
                if K.coefficients.normal_form(e):
                    raise ValidationError(f"d_{i - 1} d_{i} is not zero")


# ---------------------------------------------------------------------------
# submodules of free modules, encoded with one trailing variable per basis vector


class _FreeModule:
    def __init__(self, ring: PolyRing, rank: int):
        self.base = ring
        self.rank = rank
        names = []
        for k in range(rank):
            names.append(ring.fresh_variable(f"e_{k}_"))
        self.ring = ring.extended(names)
        n = ring.nvars
        # position over term, first basis vector largest
        self.order = BlockOrder([(tuple(range(n, n + rank)), "lex"), tuple(range(n))],
                                nvars=n + rank)

    def vector(self, entries, offset: int = 0) -> Poly:
        out = self.ring.zero()
        for k, f in enumerate(entries):
            if f:
                out = out + f.to_ring(self.ring) * self.ring.gen(self.base.nvars + offset + k)
        return out

    def split(self, v: Poly):
        """Component polynomials of an encoded vector."""
        n = self.base.nvars
        parts = [dict() for _ in range(self.rank)]
        for e, c in v.terms.items():
            comp = next(k for k in range(self.rank) if e[n + k])
            parts[comp][e[:n]] = c
        return [Poly(self.base, d) for d in parts]

    def leading_component(self, v: Poly) -> int:
        e = v.leading_monomial(self.order)
        n = self.base.nvars
        return next(k for k in range(self.rank) if e[n + k])

    def groebner(self, vectors):
        return buchberger(vectors, self.order, module_rank=self.rank)


def _preimage(ring: PolyRing, columns, target_rank: int, relations):
    """Generators of ``{λ : Σ λ_k columns[k] ∈ span(relations)}`` in ``ring^len(columns)``.

    ``columns`` and ``relations`` are vectors of length ``target_rank``.
    """
    s = len(columns)
    M = _FreeModule(ring, target_rank + s)
    vecs = []
    for k, col in enumerate(columns):
        unit = [ring.zero()] * s
        unit[k] = ring.one()
        vecs.append(M.vector(list(col) + unit))
    for rel in relations:
        vecs.append(M.vector(list(rel) + [ring.zero()] * s))
    gb = M.groebner(vecs)
    out = []
    for g in gb:
        if M.leading_component(g) >= target_rank:
            out.append(M.split(g)[target_rank:])
    return out


def _quotient_dimension(ring: PolyRing, rank: int, vectors) -> int | None:
    """``dim_k ring^rank / span(vectors)`` or ``None`` when infinite."""
    M = _FreeModule(ring, rank)
    gb = M.groebner([M.vector(v) for v in vectors if any(v)])
    n = ring.nvars
    total = 0
    for k in range(rank):
        lms = []
        for g in gb:
            e = g.leading_monomial(M.order)
            if e[n + k]:
                lms.append(e[:n])
        if any(not any(m) for m in lms):
            continue
        monos = Ideal(ring, [ring.monomial(m) for m in lms])
        if not monos.is_zero_dimensional():
            return None
        total += monos.vector_space_dimension()
    return total


def _unit_vectors(ring, rank):
    out = []
    for k in range(rank):
        v = [ring.zero()] * rank
        v[k] = ring.one()
        out.append(v)
    return out


def _columns(mat, ncols):
    return [[row[c] for row in mat] for c in range(ncols)]


def homology_length_at(K: KoszulComplex, i: int, P) -> int:
    """Length of ``H_i(K)`` localized at the zero-dimensional prime ``P``."""
    if isinstance(P, PrimeComponent):
        P = P.ideal
    ring = K.ring
    if i < 0 or i > K.length:
        return 0
    if not P.is_zero_dimensional():
        raise NotFiniteLength("homology lengths are only computed at closed points")
    support = K.coefficients + Ideal(ring, K.sequence)
    if not P.contains_ideal(support):
        return 0
    try:
        local_length(support, P)
    except NotMinimalPrime as exc:
        raise NotFiniteLength(f"homology is not of finite length at the point: {exc}") from exc
    Q = primary_component(support, P)
    residue = P.vector_space_dimension()
    J = K.coefficients.groebner()
    r_i = K.rank(i)
    # cycles Z_i
    if i == 0:
        Z = _unit_vectors(ring, r_i)
    else:
        r_prev = K.rank(i - 1)
        cols = _columns(K.differentials[i], r_i)
        rels = [[g if k == j else ring.zero() for k in range(r_prev)]
                for j in range(r_prev) for g in J]
        Z = _preimage(ring, cols, r_prev, rels)
    if not Z:
        return 0
    # boundaries plus J * K_i
    bounds = []
    if i < K.length:
        bounds.extend(_columns(K.differentials[i + 1], K.rank(i + 1)))
    bounds.extend([[g if k == j else ring.zero() for k in range(r_i)]
                   for j in range(r_i) for g in J])
    pre = _preimage(ring, Z, r_i, bounds)
    s = len(Z)
    qgens = Q.groebner()
    pre.extend([[q if k == j else ring.zero() for k in range(s)] for j in range(s) for q in qgens])
    dim = _quotient_dimension(ring, s, pre)
    if dim is None:
        raise NotFiniteLength("localized homology is not finite dimensional")
    if dim % residue:
        raise NotFiniteLength("dimension is not a multiple of the residue degree")
    return dim // residue


def euler_characteristic_at(K: KoszulComplex, P) -> tuple[int, list[int]]:
    lengths = [homology_length_at(K, i, P) for i in range(K.length + 1)]
    return sum((-1) ** i * h for i, h in enumerate(lengths)), lengths


# ---------------------------------------------------------------------------
# reduction to the diagonal


@dataclass
class MultiplicityReport:
    component: PrimeComponent
    euler_characteristic: int
    lengths: list
    method: str = "cohen-macaulay"

    def __post_init__(self):
        alt = sum((-1) ** i * h for i, h in enumerate(self.lengths))
        if alt != self.euler_characteristic:
            raise ValidationError("Euler characteristic differs from the alternating sum")

    def to_json(self) -> dict:
        return {
            "component": [str(g) for g in self.component.generators()],
            "euler_characteristic": self.euler_characteristic,
            "lengths": list(self.lengths),
            "method": self.method,
        }


def doubled_ring(ring: PolyRing) -> tuple[PolyRing, list[str]]:
    names = []
    taken = set(ring.variables)
    for v in ring.variables:
        name = v + "_d"
        while name in taken:
            name += "_"
        taken.add(name)
        names.append(name)
    return ring.extended(names), names


def diagonal_koszul(I_V: Ideal, I_W: Ideal) -> tuple[KoszulComplex, PolyRing]:
    """Koszul complex of ``x - y`` over ``k[x,y]/(I_V(x) + I_W(y))``."""
    ring = I_V.ring
    big, names = doubled_ring(ring)
    copy_ring = ring.with_variables(names)
    n = ring.nvars
    gens = [g.to_ring(big) for g in I_V.groebner()]
    for g in I_W.groebner():
        gens.append(Poly(copy_ring, g.terms).to_ring(big))
    J = Ideal(big, gens)
    seq = [big.gen(k) - big.gen(n + k) for k in range(n)]
    return build_koszul(big, seq, J), big


def cohen_macaulay(comp: PrimeComponent) -> bool:
    """Sufficient certificate that the component's coordinate ring is Cohen-Macaulay."""
    if comp.complete_intersection or comp.dimension <= 1:
        return True
    codim = comp.ring.nvars - comp.dimension
    return len(comp.generators()) <= codim


def _check_proper(V: PrimeComponent, W: PrimeComponent, n: int) -> int:
    expected = V.dimension + W.dimension - n
    S = V.ideal + W.ideal
    if S.is_unit():
        return expected
    actual = S.krull_dimension()
    if actual != expected or expected < 0:
        raise ImproperIntersection(
            "components do not intersect properly",
            first=[str(g) for g in V.generators()],
            second=[str(g) for g in W.generators()],
            expected=expected,
            actual=actual,
        )
    return expected


def intersection_multiplicity(V: PrimeComponent, W: PrimeComponent, P: PrimeComponent,
                              method: str = "auto",
                              ambient_dimension: int | None = None) -> MultiplicityReport:
    """Serre multiplicity of ``V`` and ``W`` along ``P``.

    The ambient is affine space on the components' ring unless
    ``ambient_dimension`` names a smaller smooth ambient containing both (then
    only the Cohen-Macaulay route is available).
    """
    ring = V.ring
    if W.ring != ring or P.ring != ring:
        raise MixedContext("components live in different rings")
    n = ring.nvars if ambient_dimension is None else ambient_dimension
    expected = V.dimension + W.dimension - n
    if P.dimension != expected:
        raise ImproperIntersection(
            "component has the wrong dimension", expected=expected, actual=P.dimension
        )
    _check_proper(V, W, n)
    S = V.ideal + W.ideal
    if method == "auto":
        method = "cohen-macaulay" if cohen_macaulay(V) and cohen_macaulay(W) else "koszul"
    if method == "cohen-macaulay":
        try:
            h0 = local_length(S, P.ideal)
        except NotMinimalPrime as exc:
            raise NotFiniteLength(str(exc)) from exc
        return MultiplicityReport(P, h0, [h0] + [0] * ring.nvars, "cohen-macaulay")
    if method != "koszul":
        raise ValueError(f"unknown method {method!r}")
    if n != ring.nvars:
        raise UnsupportedShape(
            "Koszul route needs affine space as ambient; components are not certified "
            "Cohen-Macaulay"
        )
    K, big = diagonal_koszul(V.ideal, W.ideal)
    PD = Ideal(big, [g.to_ring(big) for g in P.generators()]
               + [big.gen(k) - big.gen(ring.nvars + k) for k in range(ring.nvars)])
    chi, lengths = euler_characteristic_at(K, PD)
    return MultiplicityReport(P, chi, lengths, "koszul")


def affine_pair_product(V: PrimeComponent, W: PrimeComponent,
                        ambient_dimension: int | None = None):
    """``[V]·[W]`` inside affine space (or a smooth ambient of the given dimension)."""
    n = V.ring.nvars if ambient_dimension is None else ambient_dimension
    _check_proper(V, W, n)
    S = V.ideal + W.ideal
    if S.is_unit():
        return []
    out = []
    for P in minimal_primes(S):
        rep = intersection_multiplicity(V, W, P, ambient_dimension=ambient_dimension)
        out.append((P, rep.euler_characteristic))
    return out


# ---------------------------------------------------------------------------
# intersection product of cycles


def _chart_component(comp: PrimeComponent, var: str) -> PrimeComponent:
    I = comp.ideal.dehomogenize(var)
    codim = comp.ring.nvars - 1 - comp.dimension
    ci = comp.dimension <= 1 or len(comp.generators()) <= codim
    return PrimeComponent(I, "chart+" + comp.certificate, comp.dimension,
                          comp.residue_degree, ci)


def _visible_charts(comp: PrimeComponent):
    ring = comp.ring
    return [i for i in range(ring.nvars) if not comp.ideal.contains(ring.gen(i))]


def pair_product(V: PrimeComponent, W: PrimeComponent, ambient: Ambient,
                 cross_check: bool = True) -> list[tuple[PrimeComponent, int]]:
    """``[V]·[W]`` as a list of (component, multiplicity)."""
    ring = ambient.ring
    if ambient.kind == "affine":
        return affine_pair_product(V, W)
    n = ring.nvars - 1
    expected = V.dimension + W.dimension - n
    S = V.ideal + W.ideal
    comps = projective_minimal_primes(S)
    if not comps:
        if expected > 0:
            raise ImproperIntersection("empty intersection of positive expected dimension")
        return []
    out = []
    for P in comps:
        if P.dimension != expected or expected < 0:
            raise ImproperIntersection(
                "components do not intersect properly",
                first=[str(g) for g in V.generators()],
                second=[str(g) for g in W.generators()],
                expected=expected,
                actual=P.dimension,
            )
        charts = _visible_charts(P)
        mults = []
        for i in charts[: 2 if cross_check else 1]:
            var = ring.variables[i]
            m = intersection_multiplicity(
                _chart_component(V, var), _chart_component(W, var), _chart_component(P, var)
            ).euler_characteristic
            mults.append(m)
        if len(set(mults)) != 1:
            raise ValidationError("multiplicity differs between affine charts", values=mults)
        out.append((P, mults[0]))
    return out


def intersection_product(a: Cycle, b: Cycle, ambient: Ambient | None = None,
                         cross_check: bool = True) -> Cycle:
    """Bilinear intersection product of properly intersecting cycles."""
    ambient = ambient or a.ambient
    if a.ambient != ambient or b.ambient != ambient:
        raise AmbientMismatch("cycles live on different ambients")
    terms = []
    for V, alpha in a.terms:
        for W, beta in b.terms:
            for P, m in pair_product(V, W, ambient, cross_check):
                component_degree(P, ambient)
                terms.append((P, alpha * beta * m))
    codim = None
    if a.codimension is not None and b.codimension is not None:
        codim = a.codimension + b.codimension
    return Cycle(ambient, terms, codim)
