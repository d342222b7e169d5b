"""Finite correspondences between affine varieties.

A correspondence from ``X`` to ``Y`` is a cycle on ``X × Y`` whose components
are finite and surjective over a component of ``X``.  The product ring uses
the variables of ``X`` followed by those of ``Y`` (primed when the names
clash, so endomorphisms ``X -> X`` work).

``compose(alpha, beta)`` takes ``alpha: X -> Y`` and ``beta: Y -> Z`` and
returns ``p13_*([alpha × Z] · [X × beta])``, a correspondence ``X -> Z``.
With this argument order ``graph(g∘f) = compose(graph(f), graph(g))``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import Ambient, Cycle, associated_cycle, component_degree
from .decompose import PrimeComponent, dimension_over_function_field, minimal_primes
from .errors import (
    AmbientMismatch,
    DegreeComputationFailed,
    ImageNotInTarget,
    ImproperIntersection,
    NotFinite,
    NotSurjective,
    UltracyclesError,
    ValidationError,
)
from .groebner import Ideal
from .koszul import affine_pair_product
from .poly import BlockOrder, Poly, PolyRing


# ---------------------------------------------------------------------------
# varieties


@dataclass
class VarietySpec:
    """An affine variety ``V(ideal)`` in the affine space of ``ring``."""

    ring: PolyRing
    ideal: Ideal | None = None
    name: str = ""
    smooth: bool | None = None
    components: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if self.ideal is None:
            self.ideal = Ideal(self.ring)
        if self.ideal.ring != self.ring:
            raise AmbientMismatch("ideal lives in a different ring")
        if not self.components:
            self.components = minimal_primes(self.ideal)
        if not self.components:
            raise ValidationError("variety is empty")
        dims = {c.dimension for c in self.components}
        if len(dims) != 1:
            raise ValidationError(f"variety is not equidimensional: dimensions {sorted(dims)}")
        if self.ideal.is_zero():
            self.smooth = True

    @classmethod
    def affine_space(cls, field, variables, name: str = "") -> "VarietySpec":
        return cls(PolyRing(field, variables), None, name or f"A^{len(variables)}")

    @property
    def dimension(self) -> int:
        return self.components[0].dimension

    @property
    def variables(self):
        return self.ring.variables

    @property
    def field(self):
        return self.ring.field

    def check_smooth(self) -> bool:
        """Jacobian criterion: reduced, and ``I + (c×c minors)`` is the unit ideal."""
        from .cycles import length_at

        amb = Ambient.affine(self.ring)
        if any(length_at(self.ideal, c, amb) != 1 for c in self.components):
            self.smooth = False
            return False
        gens = list(self.ideal.groebner())
        if not gens:
            self.smooth = True
            return True
        codim = self.ring.nvars - self.dimension
        jac = [[g.derivative(i) for i in range(self.ring.nvars)] for g in gens]
        minors = []
        for rows in itertools.combinations(range(len(gens)), codim):
            for cols in itertools.combinations(range(self.ring.nvars), codim):
                minors.append(_det([[jac[r][c] for c in cols] for r in rows], self.ring))
        sing = Ideal(self.ring, gens + [m for m in minors if m])
        self.smooth = sing.is_unit()
        return self.smooth

    def same_as(self, other: "VarietySpec") -> bool:
        return self.ring == other.ring and self.ideal == other.ideal

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "field": self.ring.field.name,
            "variables": list(self.ring.variables),
            "ideal": [str(g) for g in self.ideal.groebner()],
        }


def _det(m, ring):
    if not m:
        return ring.one()
    if len(m) == 1:
        return m[0][0]
    out = ring.zero()
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor, ring)
        out = out + term if j % 2 == 0 else out - term
    return out


def product_names(*rings: PolyRing) -> list[list[str]]:
    """Variable names for a product ring, priming repeated names."""
    taken: set = set()
    out = []
    for r in rings:
        names = []
        for v in r.variables:
            name = v
            while name in taken:
                name += "'"
            taken.add(name)
            names.append(name)
        out.append(names)
    return out


def product_ring(X: VarietySpec, Y: VarietySpec) -> PolyRing:
    if X.field != Y.field:
        raise AmbientMismatch("varieties over different fields")
    a, b = product_names(X.ring, Y.ring)
    return PolyRing(X.field, a + b)


def _move(f: Poly, ring: PolyRing, names) -> Poly:
    """Reinterpret ``f`` positionally with variables ``names`` inside ``ring``."""
    return Poly(f.ring.with_variables(names), f.terms).to_ring(ring)


# ---------------------------------------------------------------------------
# finiteness


@dataclass
class FinitenessCertificate:
    """Per target variable: a polynomial in the component's ideal monic in that variable."""

    component: PrimeComponent
    monic: dict  # variable name -> (degree, polynomial)
    source_component: PrimeComponent

    def degrees(self) -> dict:
        return {v: d for v, (d, _) in self.monic.items()}


def _monic_in(P: Ideal, x_idx, j: int):
    """Element of ``P ∩ k[x, y_j]`` monic in ``y_j`` over ``k[x]``, or ``None``."""
    ring = P.ring
    keep = list(x_idx) + [j]
    E = P.elimination_ideal(keep)
    order = BlockOrder([(j,), tuple(x_idx)], nvars=ring.nvars)
    best = None
    for g in E.groebner(order):
        lm = g.leading_monomial(order)
        if lm[j] and all(lm[i] == 0 for i in x_idx):
            if best is None or lm[j] < best[0]:
                best = (lm[j], g)
    return best


def check_finite_surjective(W: Cycle, X: VarietySpec, Y: VarietySpec):
    """Certificates that each component of ``W`` is finite and surjective over ``X``."""
    ring = product_ring(X, Y)
    if W.ambient.ring != ring:
        raise AmbientMismatch(f"cycle ring {W.ambient.ring} is not {ring}")
    nx = X.ring.nvars
    x_idx = list(range(nx))
    x_names = ring.variables[:nx]
    certs = []
    for comp, _ in W.terms:
        if not comp.ideal.contains_ideal(_lift_ideal(X.ideal, ring, x_names)):
            raise NotSurjective("component does not lie over the source",
                                component=[str(g) for g in comp.generators()])
        monic = {}
        for j in range(nx, ring.nvars):
            found = _monic_in(comp.ideal, x_idx, j)
            if found is None:
                raise NotFinite(
                    f"no polynomial monic in {ring.variables[j]} over the source",
                    component=[str(g) for g in comp.generators()],
                    variable=ring.variables[j],
                )
            monic[ring.variables[j]] = found
        image = comp.ideal.restrict(x_names)
        image = Ideal(X.ring, [Poly(X.ring, g.terms) for g in image.gens])
        src = next((c for c in X.components if c.ideal == image), None)
        if src is None:
            raise NotSurjective(
                "image is not a component of the source",
                component=[str(g) for g in comp.generators()],
                image=[str(g) for g in image.groebner()],
            )
        certs.append(FinitenessCertificate(comp, monic, src))
    return certs


def _lift_ideal(I: Ideal, ring: PolyRing, names) -> Ideal:
    return Ideal(ring, [_move(g, ring, names) for g in I.gens])


# ---------------------------------------------------------------------------
# correspondences


@dataclass
class Correspondence:
    source: VarietySpec
    target: VarietySpec
    cycle: Cycle
    certificates: list = field(default_factory=list, repr=False)
    beyond_paper: bool = False

    def __post_init__(self):
        if not self.certificates and not self.cycle.is_zero():
            self.certificates = check_finite_surjective(self.cycle, self.source, self.target)

    @property
    def ring(self) -> PolyRing:
        return self.cycle.ambient.ring

    def _check(self, other: "Correspondence"):
        if not (self.source.same_as(other.source) and self.target.same_as(other.target)):
            raise AmbientMismatch("correspondences between different varieties")

    def __add__(self, other: "Correspondence") -> "Correspondence":
        self._check(other)
        return Correspondence(self.source, self.target, self.cycle + other.cycle,
                              beyond_paper=self.beyond_paper or other.beyond_paper)

    def __sub__(self, other: "Correspondence") -> "Correspondence":
        self._check(other)
        return Correspondence(self.source, self.target, self.cycle - other.cycle,
                              beyond_paper=self.beyond_paper or other.beyond_paper)

    def scale(self, n: int) -> "Correspondence":
        return Correspondence(self.source, self.target, self.cycle.scale(n),
                              beyond_paper=self.beyond_paper)

    def __eq__(self, other):
        if not isinstance(other, Correspondence):
            return NotImplemented
        return (
            self.source.same_as(other.source)
            and self.target.same_as(other.target)
            and self.cycle == other.cycle
        )

    def degree_over_source(self) -> int:
        """Multiplicity-weighted generic degree over the source."""
        nx = self.source.ring.nvars
        total = 0
        for comp, m in self.cycle.terms:
            total += m * extension_degree(comp, list(range(nx)))
        return total

    def to_json(self) -> dict:
        certs = {c.component.key(): c.degrees() for c in self.certificates}
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "variables": list(self.ring.variables),
            "beyond_paper": self.beyond_paper,
            "components": [
                {
                    "generators": [str(g) for g in comp.generators()],
                    "multiplicity": m,
                    "finiteness": certs.get(comp.key(), {}),
                }
                for comp, m in self.cycle.terms
            ],
        }


def correspondence_from_ideal(X: VarietySpec, Y: VarietySpec, gens) -> Correspondence:
    """The associated cycle of ``V(I_X + gens)`` in ``X × Y`` as a correspondence."""
    ring = product_ring(X, Y)
    a, b = product_names(X.ring, Y.ring)
    polys = [ring(g) for g in gens]
    I = Ideal(ring, polys + list(_lift_ideal(X.ideal, ring, a).gens)
              + list(_lift_ideal(Y.ideal, ring, b).gens))
    cyc = associated_cycle(I, Ambient.affine(ring))
    return Correspondence(X, Y, cyc)


def graph(X: VarietySpec, Y: VarietySpec, images) -> Correspondence:
    """Graph of the polynomial map ``X -> Y`` with coordinates ``images`` (one per Y variable)."""
    images = [X.ring(f) if not isinstance(f, Poly) else f for f in images]
    if len(images) != Y.ring.nvars:
        raise ValidationError("need one image polynomial per target variable")
    for g in Y.ideal.gens:
        pulled = g.compose(images, X.ring)
        if not X.ideal.contains(pulled):
            raise ImageNotInTarget(
                "the map does not land in the target", generator=str(g), pulled=str(pulled)
            )
    ring = product_ring(X, Y)
    a, b = product_names(X.ring, Y.ring)
    gens = [ring.gen(b[j]) - _move(images[j], ring, a) for j in range(len(b))]
    gens += list(_lift_ideal(X.ideal, ring, a).gens)
    cyc = associated_cycle(Ideal(ring, gens), Ambient.affine(ring))
    return Correspondence(X, Y, cyc)


def identity(X: VarietySpec) -> Correspondence:
    return graph(X, X, list(X.ring.gens))


# ---------------------------------------------------------------------------
# pushforward


def extension_degree(comp: PrimeComponent, keep_idx) -> int:
    """``[κ(W) : κ(f(W))]`` for the projection onto the variables ``keep_idx``.

    Both residue fields are measured over ``k(u)`` for a maximal independent
    set ``u`` of the image, by counting standard monomials of block-order
    Gröbner bases.  Returns 0 when the projection drops dimension.
    """
    ring = comp.ring
    keep_idx = list(keep_idx)
    image = comp.ideal.elimination_ideal(keep_idx)
    sub = ring.with_variables([ring.variables[i] for i in keep_idx])
    img = Ideal(sub, [g.to_ring(sub) for g in image.gens])
    dim_img = img.krull_dimension()
    if dim_img != comp.dimension:
        return 0
    sets = img.independent_sets()
    u_sub = sets[0]
    u = [keep_idx[i] for i in u_sub]
    w_img = [i for i in range(sub.nvars) if i not in u_sub]
    w_all = [i for i in range(ring.nvars) if i not in u]
    d_img = dimension_over_function_field(img, w_img, list(u_sub))
    d_w = dimension_over_function_field(comp.ideal, w_all, u)
    if not d_img or not d_w or d_w % d_img:
        raise DegreeComputationFailed(
            "generic fiber degree is not a well-defined integer",
            component=[str(g) for g in comp.generators()],
            image=d_img,
            total=d_w,
        )
    return d_w // d_img


def image_component(comp: PrimeComponent, keep, target_ring: PolyRing) -> PrimeComponent:
    """The (prime) closure of the image of a component under a coordinate projection."""
    ring = comp.ring
    keep_idx = [ring.index(v) for v in keep]
    image = comp.ideal.elimination_ideal(keep_idx)
    names = [ring.variables[i] for i in keep_idx]
    gens = [_move(g.to_ring(ring.with_variables(names)), target_ring, target_ring.variables)
            for g in image.gens]
    I = Ideal(target_ring, gens)
    return PrimeComponent(I, "image-of-prime", I.krull_dimension(), 1, False)


def pushforward(w: Cycle, keep, target: Ambient | None = None) -> Cycle:
    """Push a cycle forward along the projection onto the variables ``keep``.

    Each component contributes ``[κ(W):κ(f(W))]·[f(W)]`` when the dimension is
    preserved and nothing otherwise.
    """
    ring = w.ambient.ring
    keep_idx = [ring.index(v) for v in keep]
    if target is None:
        target = Ambient.affine(ring.with_variables([ring.variables[i] for i in keep_idx]))
    if target.ring.nvars != len(keep_idx):
        raise AmbientMismatch("target ring has the wrong number of variables")
    terms = []
    for comp, m in w.terms:
        deg = extension_degree(comp, keep_idx)
        if deg == 0:
            continue
        img = image_component(comp, keep_idx, target.ring)
        img = _recertify(img)
        terms.append((img, m * deg))
    return Cycle(target, terms)


def _recertify(img: PrimeComponent) -> PrimeComponent:
    """Prefer a certificate from the decomposition strategies when one applies."""
    try:
        comps = minimal_primes(img.ideal)
    except UltracyclesError:
        return img
    if len(comps) == 1 and comps[0].ideal == img.ideal:
        return comps[0]
    return img


def pushforward_map(w: Cycle, images, target: Ambient) -> Cycle:
    """Push forward along the polynomial map given by ``images`` (via its graph)."""
    ring = w.ambient.ring
    a, b = product_names(ring, target.ring)
    big = PolyRing(ring.field, a + b)
    terms = []
    for comp, m in w.terms:
        gens = [_move(g, big, a) for g in comp.generators()]
        gens += [big.gen(b[j]) - _move(ring(f), big, a) for j, f in enumerate(images)]
        G = Ideal(big, gens)
        gc = PrimeComponent(G, "graph+" + comp.certificate, comp.dimension, 1,
                            comp.complete_intersection)
        terms.append((gc, m))
    graph_cycle = Cycle(Ambient.affine(big), terms)
    return pushforward(graph_cycle, b, target)


# ---------------------------------------------------------------------------
# composition


def compose(alpha: Correspondence, beta: Correspondence) -> Correspondence:
    """``beta ∘ alpha`` for ``alpha: X -> Y`` and ``beta: Y -> Z``."""
    X, Y = alpha.source, alpha.target
    if not beta.source.same_as(Y):
        raise AmbientMismatch("target of the first correspondence is not the source of the second")
    Z = beta.target
    nx, ny, nz = X.ring.nvars, Y.ring.nvars, Z.ring.nvars
    # internal triple ring with positional names, so clashes cannot occur
    xs = [f"x{i}_" for i in range(nx)]
    ys = [f"y{i}_" for i in range(ny)]
    zs = [f"z{i}_" for i in range(nz)]
    triple = PolyRing(X.field, xs + ys + zs)
    amb_dim = X.dimension + Y.dimension + Z.dimension
    x_ideal = _lift_ideal(X.ideal, triple, xs)
    z_ideal = _lift_ideal(Z.ideal, triple, zs)
    left = []  # alpha × Z
    for comp, m in alpha.cycle.terms:
        I = Ideal(triple, [_move(g, triple, xs + ys) for g in comp.generators()]) + z_ideal
        for c in _cylinder_components(I, comp, Z):
            left.append((c, m))
    right = []  # X × beta
    for comp, m in beta.cycle.terms:
        I = Ideal(triple, [_move(g, triple, ys + zs) for g in comp.generators()]) + x_ideal
        for c in _cylinder_components(I, comp, X):
            right.append((c, m))
    terms = []
    for V, a in left:
        for W, b in right:
            try:
                prod = affine_pair_product(V, W, ambient_dimension=amb_dim)
            except ImproperIntersection as exc:
                exc.data["pair"] = ([str(g) for g in V.generators()],
                                    [str(g) for g in W.generators()])
                raise
            for P, e in prod:
                terms.append((P, a * b * e))
    product = Cycle(Ambient.affine(triple), terms)
    out_ring = product_ring(X, Z)
    pushed = pushforward(product, xs + zs, Ambient.affine(out_ring))
    flag = alpha.beyond_paper or beta.beyond_paper or not all(
        v.smooth is True or v.check_smooth() for v in (X, Y, Z)
    )
    return Correspondence(X, Z, pushed, beyond_paper=flag)


def _cylinder_components(I: Ideal, comp: PrimeComponent, other: VarietySpec):
    """Components of ``V(comp) × other`` as primes of the triple ring."""
    if other.ideal.is_zero():
        dim = comp.dimension + other.ring.nvars
        return [PrimeComponent(I, "cylinder+" + comp.certificate, dim, comp.residue_degree,
                               comp.complete_intersection)]
    return minimal_primes(I)


# ---------------------------------------------------------------------------
# category laws


@dataclass
class LawReport:
    checks: list = field(default_factory=list)  # (name, passed, detail)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append((name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [c for c in self.checks if not c[1]]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "total": len(self.checks),
            "failed": len(self.failures()),
            "checks": [{"law": n, "passed": ok, "detail": d} for n, ok, d in self.checks],
        }


def category_laws_check(chains) -> LawReport:
    """Identity, associativity and bilinearity on composable chains.

    ``chains`` is a list of tuples of correspondences ``(a, b, c, ...)`` with
    ``a: X0 -> X1``, ``b: X1 -> X2`` and so on.
    """
    rep = LawReport()
    for chain in chains:
        for k, a in enumerate(chain):
            try:
                rep.add("left identity", compose(identity(a.source), a) == a, f"chain item {k}")
                rep.add("right identity", compose(a, identity(a.target)) == a, f"chain item {k}")
            except UltracyclesError as exc:
                rep.add("identity", False, str(exc))
        for k in range(len(chain) - 2):
            a, b, c = chain[k:k + 3]
            try:
                lhs = compose(compose(a, b), c)
                rhs = compose(a, compose(b, c))
                rep.add("associativity", lhs == rhs, f"positions {k}..{k + 2}")
            except UltracyclesError as exc:
                rep.add("associativity", False, str(exc))
        for k in range(len(chain) - 1):
            a, b = chain[k:k + 2]
            try:
                lhs = compose(a + a, b)
                rhs = compose(a, b) + compose(a, b)
                rep.add("bilinearity", lhs == rhs, f"positions {k}..{k + 1}")
            except UltracyclesError as exc:
                rep.add("bilinearity", False, str(exc))
    return rep


# ---------------------------------------------------------------------------
# fiber-degree spot checks


def fiber_degree_at(comp: PrimeComponent, keep_idx, point: dict) -> Fraction | None:
    """Ratio of fiber length to image-point length after specializing the image's free variables.

    ``point`` assigns values to a maximal independent set of the image;
    returns ``None`` if the specialization is not zero-dimensional.
    """
    ring = comp.ring
    idx = {ring.index(v): c for v, c in point.items()}
    spec = [ring.gen(i) - ring.constant(c) for i, c in idx.items()]
    total = Ideal(ring, list(comp.generators()) + spec)
    image = comp.ideal.elimination_ideal(keep_idx)
    base = Ideal(ring, list(image.groebner()) + spec)
    # the image ideal lives in the full ring; free variables outside keep are
    # not constrained there, so restrict to the kept variables
    sub = ring.with_variables([ring.variables[i] for i in keep_idx])
    base = Ideal(sub, [g.to_ring(sub) for g in base.gens])
    if total.is_unit() or base.is_unit():
        return None
    if not total.is_zero_dimensional() or not base.is_zero_dimensional():
        return None
    return Fraction(total.vector_space_dimension(), base.vector_space_dimension())


def spot_check_degree(comp: PrimeComponent, keep_idx, samples: int = 3, seed: int = 0,
                      bound: int = 1000):
    """Fiber ratios at ``samples`` random points of the image's independent variables."""
    ring = comp.ring
    image = comp.ideal.elimination_ideal(keep_idx)
    sub = ring.with_variables([ring.variables[i] for i in keep_idx])
    img = Ideal(sub, [g.to_ring(sub) for g in image.gens])
    u_sub = img.independent_sets()[0]
    u_names = [sub.variables[i] for i in u_sub]
    p = ring.field.characteristic
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        point = {v: rng.randrange(1, (p or bound)) for v in u_names}
        out.append(fiber_degree_at(comp, keep_idx, point))
    return out
