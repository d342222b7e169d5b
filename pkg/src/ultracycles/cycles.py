"""Algebraic cycles on affine and projective space.

A cycle is a finite formal sum of prime components with nonzero integer
multiplicities.  Projective components are stored as homogeneous primes;
they are found chart by chart (dehomogenize at ``x_i``, decompose, take the
projective closure) and kept at the first chart where they are visible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decompose import PrimeComponent, local_length, minimal_primes
from .errors import AmbientMismatch, NotHomogeneous, NotMinimalPrime, ValidationError
from .groebner import Ideal
from .hilbert import hilbert
from .poly import GREVLEX, Poly, PolyRing


@dataclass(frozen=True)
class Ambient:
    kind: str  # "affine" or "projective"
    ring: PolyRing

    def __post_init__(self):
        if self.kind not in ("affine", "projective"):
            raise ValueError(f"unknown ambient kind {self.kind!r}")
        if self.kind == "projective" and self.ring.nvars < 1:
            raise ValueError("projective space needs at least one variable")

    @classmethod
    def affine(cls, ring: PolyRing) -> "Ambient":
        return cls("affine", ring)

    @classmethod
    def projective(cls, ring: PolyRing) -> "Ambient":
        return cls("projective", ring)

    @property
    def dimension(self) -> int:
        n = self.ring.nvars
        return n - 1 if self.kind == "projective" else n

    @property
    def field(self):
        return self.ring.field

    def with_field(self, field) -> "Ambient":
        return Ambient(self.kind, self.ring.with_field(field))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "field": self.ring.field.name,
            "variables": list(self.ring.variables),
        }

    def __str__(self):
        sym = "P" if self.kind == "projective" else "A"
        return f"{sym}^{self.dimension} over {self.ring.field.name} ({', '.join(self.ring.variables)})"


# ---------------------------------------------------------------------------
# components in an ambient


def closure_variable(ring: PolyRing) -> str:
    return ring.fresh_variable("h_")


def component_degree(comp: PrimeComponent, ambient: Ambient) -> int:
    """Degree of the component (of its projective closure in the affine case)."""
    if comp.degree is not None:
        return comp.degree
    if ambient.kind == "projective":
        deg = hilbert(comp.ideal).degree
    else:
        var = closure_variable(comp.ring)
        deg = hilbert(comp.ideal.homogenize(var)).degree
    comp.degree = deg
    return deg


def _chart(ring: PolyRing, i: int) -> PolyRing:
    return ring.with_variables(ring.variables[:i] + ring.variables[i + 1:])


def projective_minimal_primes(I: Ideal) -> list[PrimeComponent]:
    """Minimal primes of a homogeneous ideal, irrelevant components excluded."""
    if not I.homogeneous:
        raise NotHomogeneous("projective ideals must be homogeneous")
    ring = I.ring
    out: list[PrimeComponent] = []
    for i, var in enumerate(ring.variables):
        # components not seen on earlier charts lie in x_0 = ... = x_{i-1} = 0
        J = Ideal(ring, list(I.gens) + [ring.gen(j) for j in range(i)]).dehomogenize(var)
        for c in minimal_primes(J):
            Ph = c.ideal.homogenize(var, ring)
            if any(Ph.contains_ideal(d.ideal) for d in out):
                continue  # inside a component found on an earlier chart
            comp = PrimeComponent(
                Ph,
                f"chart:{var}+{c.certificate}",
                c.dimension,
                c.residue_degree,
                c.complete_intersection,
            )
            if not any(comp.same_as(d) for d in out):
                out.append(comp)
    return out


def components(I: Ideal, ambient: Ambient) -> list[PrimeComponent]:
    if I.ring != ambient.ring:
        raise AmbientMismatch(f"ideal in {I.ring}, ambient {ambient}")
    if ambient.kind == "projective":
        comps = projective_minimal_primes(I)
    else:
        comps = minimal_primes(I)
    for c in comps:
        component_degree(c, ambient)
    return comps


def chart_index(comp: PrimeComponent) -> int:
    """First coordinate not vanishing identically on a projective component."""
    ring = comp.ring
    for i in range(ring.nvars):
        if not comp.ideal.contains(ring.gen(i)):
            return i
    raise ValidationError("component lies in the irrelevant locus")


def length_at(I: Ideal, comp: PrimeComponent, ambient: Ambient) -> int:
    """Length of the local ring of ``V(I)`` at the generic point of ``comp``."""
    if ambient.kind == "affine":
        return local_length(I, comp.ideal)
    i = chart_index(comp)
    var = I.ring.variables[i]
    return local_length(I.dehomogenize(var), comp.ideal.dehomogenize(var))


def dehomogenized(comp: PrimeComponent, i: int) -> Ideal:
    return comp.ideal.dehomogenize(comp.ring.variables[i])


# ---------------------------------------------------------------------------
# cycles


@dataclass
class Cycle:
    ambient: Ambient
    terms: list = field(default_factory=list)  # [(PrimeComponent, int)]
    codimension: int | None = None
    discarded: list = field(default_factory=list)

    def __post_init__(self):
        merged: list = []
        for comp, m in self.terms:
            if comp.ring != self.ambient.ring:
                raise AmbientMismatch("component ring differs from the ambient ring")
            for k, (c, n) in enumerate(merged):
                if c.same_as(comp):
                    merged[k] = (c, n + m)
                    break
            else:
                merged.append((comp, m))
        self.terms = [(c, m) for c, m in merged if m != 0]
        for c, _ in self.terms:
            component_degree(c, self.ambient)
        codims = {self.ambient.dimension - c.dimension for c, _ in self.terms}
        if len(codims) > 1:
            raise ValidationError(f"components of mixed codimension {sorted(codims)}")
        if codims:
            (cd,) = codims
            if self.codimension is not None and self.codimension != cd:
                raise ValidationError("stated codimension does not match components")
            self.codimension = cd
        self.terms.sort(key=lambda t: _component_sort_key(t[0]))

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "Cycle"):
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"{self.ambient} vs {other.ambient}")
        if (
            self.codimension is not None
            and other.codimension is not None
            and self.codimension != other.codimension
        ):
            raise AmbientMismatch("cycles of different codimension")

    def __add__(self, other: "Cycle") -> "Cycle":
        self._check(other)
        return Cycle(self.ambient, list(self.terms) + list(other.terms), self._codim(other))

    def __sub__(self, other: "Cycle") -> "Cycle":
        self._check(other)
        return Cycle(
            self.ambient, list(self.terms) + [(c, -m) for c, m in other.terms], self._codim(other)
        )

    def __neg__(self) -> "Cycle":
        return Cycle(self.ambient, [(c, -m) for c, m in self.terms], self.codimension)

    def scale(self, n: int) -> "Cycle":
        return Cycle(self.ambient, [(c, n * m) for c, m in self.terms], self.codimension)

    def __rmul__(self, n: int) -> "Cycle":
        return self.scale(n)

    def _codim(self, other):
        return self.codimension if self.codimension is not None else other.codimension

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.ambient == other.ambient and self.canonical() == other.canonical()

    def is_zero(self) -> bool:
        return not self.terms

    # -- invariants -------------------------------------------------------------
    def degree(self) -> int:
        return sum(m * component_degree(c, self.ambient) for c, m in self.terms)

    def complexity(self) -> "ComplexityCertificate":
        return complexity(self)

    # -- serialization -----------------------------------------------------------
    def canonical(self):
        return tuple(
            (tuple(str(g) for g in c.generators()), m, component_degree(c, self.ambient), c.dimension)
            for c, m in self.terms
        )

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "codimension": self.codimension,
            "components": [
                {
                    "generators": [str(g) for g in c.generators()],
                    "multiplicity": m,
                    "degree": component_degree(c, self.ambient),
                    "dimension": c.dimension,
                }
                for c, m in self.terms
            ],
        }

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, m in self.terms:
            gens = ", ".join(str(g) for g in c.generators()) or "0"
            parts.append(f"{m}*[V({gens})]")
        return " + ".join(parts)


def _component_sort_key(c: PrimeComponent):
    gens = sorted(str(g) for g in c.generators())
    return (c.degree if c.degree is not None else 0, gens[0] if gens else "", gens)


def zero_cycle(ambient: Ambient, codimension: int | None = None) -> Cycle:
    return Cycle(ambient, [], codimension)


def associated_cycle(I: Ideal, ambient: Ambient, codimension: int | None = None) -> Cycle:
    """Sum over minimal primes of the chosen codimension of length * [V(P)].

    Without ``codimension`` the smallest codimension present is used.
    Components of other codimensions are listed in ``cycle.discarded``.
    """
    comps = components(I, ambient)
    if not comps:
        return zero_cycle(ambient, codimension)
    codims = {ambient.dimension - c.dimension for c in comps}
    target = min(codims) if codimension is None else codimension
    chosen = [c for c in comps if ambient.dimension - c.dimension == target]
    discarded = [c for c in comps if ambient.dimension - c.dimension != target]
    terms = [(c, length_at(I, c, ambient)) for c in chosen]
    cyc = Cycle(ambient, terms, target)
    cyc.discarded = discarded
    return cyc


def cycle_of(ambient: Ambient, pairs) -> Cycle:
    """Build a cycle from ``[(generators, multiplicity)]`` where each ideal is prime."""
    terms = []
    for gens, m in pairs:
        I = Ideal(ambient.ring, [ambient.ring(g) for g in gens])
        comps = components(I, ambient)
        if len(comps) != 1 or not I.contains_ideal(comps[0].ideal):
            raise ValidationError(f"ideal {gens} is not a certified prime")
        terms.append((comps[0], m))
    return Cycle(ambient, terms)


# ---------------------------------------------------------------------------
# complexity


@dataclass
class ComplexityCertificate:
    c: int
    count: int
    max_coefficient: int
    max_degree: int
    representation: list

    def to_json(self) -> dict:
        return {
            "complexity": self.c,
            "components": self.count,
            "max_abs_multiplicity": self.max_coefficient,
            "max_degree": self.max_degree,
        }


def complexity(cycle: Cycle) -> ComplexityCertificate:
    """Least ``c`` exceeding the component count, every |multiplicity| and every degree."""
    n = len(cycle.terms)
    coeffs = [abs(m) for _, m in cycle.terms]
    degs = [component_degree(c, cycle.ambient) for c, _ in cycle.terms]
    a = max(coeffs, default=0)
    d = max(degs, default=0)
    c = max(n, a, d) + 1
    rep = [(list(map(str, comp.generators())), m) for comp, m in cycle.terms]
    return ComplexityCertificate(c, n, a, d, rep)
