"""Minimal primes and local lengths of polynomial ideals.

Only strategies that certify primality soundly are used:

* ``principal``: the factors of a single generator;
* ``zero-dimensional``: radical via squarefree eliminants, then a separating
  element whose minimal polynomial is factored; each factor is one closed
  point (kept whole when it is defined over an extension field);
* ``cylinder``: variables absent from the ideal are split off;
* ``substitution``: a generator ``c*v + h`` (``c`` constant, ``v`` not in
  ``h``) lets ``v`` be eliminated by a ring isomorphism;
* ``divisorial``: a common factor ``g`` of all generators splits the zero
  set into ``V(g)`` and ``V(I : g^inf)``.

Anything else raises ``UnsupportedShape``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from .config import current_limits
from .errors import DegreeTooLarge, NotMinimalPrime, ResourceLimit, UnsupportedShape
from .factor import (
    factor,
    factor_gfp_dense,
    poly_gcd,
    qdivmod,
    qgcd,
    recorder,
    squarefree_gfp,
    to_integer_primitive,
    univariate_factor,
)
from .groebner import Ideal
from .linalg import minimal_polynomial
from .poly import GREVLEX, BlockOrder, Poly, PolyRing


@dataclass
class PrimeComponent:
    """A prime ideal together with the strategy chain that certified it."""

    ideal: Ideal
    certificate: str
    dimension: int
    residue_degree: int = 1
    complete_intersection: bool = False
    degree: int | None = None

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    def generators(self) -> tuple[Poly, ...]:
        return self.ideal.groebner(GREVLEX)

    def key(self):
        return tuple(sorted(str(g) for g in self.generators()))

    def same_as(self, other: "PrimeComponent") -> bool:
        return self.ring == other.ring and self.generators() == other.generators()

    def contains(self, other: "PrimeComponent") -> bool:
        return self.ideal.contains_ideal(other.ideal)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators()) or "0"
        return f"PrimeComponent(({gens}), dim={self.dimension}, cert={self.certificate})"


# ---------------------------------------------------------------------------
# reductions shared by primes and lengths


def _unused_variables(I: Ideal):
    used = set()
    for g in I.groebner():
        used.update(g.support())
    return [i for i in range(I.ring.nvars) if i not in used]


def _linear_generator(I: Ideal):
    """A generator ``c*v + h`` with ``c`` constant and ``v`` not in ``h``: ``(g, v)``."""
    best = None
    for g in list(I.gens) + list(I.groebner()):
        for v in range(I.ring.nvars):
            if g.degree(v) != 1:
                continue
            lead = g.coefficient(v, 1)
            if not lead.is_constant():
                continue
            size = (len(g.terms), g.total_degree(), v)
            if best is None or size < best[0]:
                best = (size, g, v)
    if best is None:
        return None
    return best[1], best[2]


def _substitution_map(ring: PolyRing, g: Poly, v: int):
    """Ring without ``v`` and the images of all variables (``v -> -h/c``)."""
    names = ring.variables[:v] + ring.variables[v + 1:]
    sub = ring.with_variables(names)
    c = g.coefficient(v, 1).constant_coefficient()
    h = g - ring.gen(v).scale(c)
    image_v = h.to_ring(sub).scale(-ring.field.inv(c)) if h else sub.zero()
    images = []
    for i in range(ring.nvars):
        images.append(image_v if i == v else sub.gen(ring.variables[i]))
    return sub, images


def _substitute(I: Ideal, g: Poly, v: int):
    sub, images = _substitution_map(I.ring, g, v)
    gens = [f.compose(images, sub) for f in I.groebner() if f != g]
    return Ideal(sub, gens), sub, images


def _drop_variables(I: Ideal, drop):
    names = [v for i, v in enumerate(I.ring.variables) if i not in drop]
    sub = I.ring.with_variables(names)
    return Ideal(sub, [g.to_ring(sub) for g in I.groebner()]), sub


# ---------------------------------------------------------------------------
# zero-dimensional tools


def multiplication_matrix(I: Ideal, u: Poly, basis=None):
    """Matrix of multiplication by ``u`` on ``A/I`` in the standard-monomial basis.

    Column ``j`` holds the coordinates of ``u * basis[j]``.
    """
    ring = I.ring
    if basis is None:
        basis = I.standard_monomials()
    index = {e: i for i, e in enumerate(basis)}
    n = len(basis)
    zero = ring.field.zero
    cols = []
    for b in basis:
        nf = I.normal_form(u.mul_term(b, ring.field.one))
        col = [zero] * n
        for e, c in nf.terms.items():
            col[index[e]] = c
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _dense_to_poly(coeffs, u: Poly) -> Poly:
    ring = u.ring
    acc = ring.zero()
    for c in reversed(coeffs):
        acc = acc * u + ring.constant(c) if c else acc * u
    return acc


def _squarefree_part(coeffs, p: int):
    if p:
        out = [1]
        from .factor import pmul

        for g, _ in squarefree_gfp([c % p for c in coeffs], p):
            out = pmul(out, g, p)
        return out
    d = [i * coeffs[i] for i in range(1, len(coeffs))]
    g = qgcd(coeffs, d)
    q = qdivmod(coeffs, g)[0]
    lc = q[-1]
    return [c / lc for c in q]


def _record(coeffs, p):
    rec = recorder()
    if rec is not None and not p:
        rec.add_poly(coeffs)


def radical_zero_dim(I: Ideal) -> Ideal:
    """Radical of a zero-dimensional ideal (squarefree univariate eliminants added)."""
    ring = I.ring
    p = ring.field.characteristic
    basis = I.standard_monomials()
    extra = []
    for i in range(ring.nvars):
        mu = minimal_polynomial(multiplication_matrix(I, ring.gen(i), basis), p)
        _record(mu, p)
        s = _squarefree_part(mu, p)
        if len(s) < len(mu):
            extra.append(_dense_to_poly(s, ring.gen(i)))
    if not extra:
        return I
    return Ideal(ring, list(I.groebner()) + extra)


def _separating_candidates(ring: PolyRing, seed: int):
    n = ring.nvars
    gens = ring.gens
    for g in gens:
        yield g
    p = ring.field.characteristic
    top = 12 if not p else min(p - 1, 12)
    for c in range(1, top + 1):
        for i, j in itertools.combinations(range(n), 2):
            yield gens[i] + gens[j].scale(ring.field(c))
    rng = random.Random(seed)
    bound = 50 if not p else p
    for attempt in range(200):
        u = ring.zero()
        for g in gens:
            u = u + g.scale(ring.field(rng.randrange(bound)))
        if attempt >= 50:
            for g in gens:
                u = u + (g * g).scale(ring.field(rng.randrange(bound)))
        if u:
            yield u


def zero_dim_points(I: Ideal):
    """Closed points of a zero-dimensional ideal: ``[(maximal ideal, residue degree)]``."""
    ring = I.ring
    p = ring.field.characteristic
    R = radical_zero_dim(I)
    basis = R.standard_monomials()
    N = len(basis)
    if N == 0:
        return []
    for u in _separating_candidates(ring, current_limits().seed):
        mu = minimal_polynomial(multiplication_matrix(R, u, basis), p)
        if len(mu) - 1 == N:
            break
    else:
        raise UnsupportedShape("no separating element found for zero-dimensional ideal")
    t = PolyRing(ring.field, ["t"])
    mu_poly = t.from_dict({(k,): c for k, c in enumerate(mu) if c})
    try:
        facs = univariate_factor(mu_poly, bound=current_limits().strategy_factor_degree)
    except DegreeTooLarge as exc:
        raise UnsupportedShape(str(exc)) from exc
    out = []
    for g, _ in facs:
        coeffs = [g.terms.get((k,), ring.field.zero) for k in range(g.degree() + 1)]
        gu = _dense_to_poly(coeffs, u)
        P = Ideal(ring, list(R.groebner()) + [gu])
        out.append((P, g.degree()))
    return out


def local_dimensions_oracle(I: Ideal):
    """Independent zero-dimensional oracle.

    For each closed point, the dimension of the corresponding generalized
    eigenspace of a separating multiplication operator on ``A/I``, divided
    by the residue degree.  Returns ``[(maximal ideal, length)]``.
    """
    from .linalg import matmul, nullspace

    ring = I.ring
    p = ring.field.characteristic
    basis = I.standard_monomials()
    N = len(basis)
    pts = zero_dim_points(I)
    out = []
    for P, deg in pts:
        # element of P not in any other point: product-free test via the
        # minimal polynomial of u restricted to P is g; use g(u)^N kernel
        gu = [g for g in P.gens][-1]
        M = multiplication_matrix(I, gu, basis)
        power = [[ring.field.one if i == j else ring.field.zero for j in range(N)] for i in range(N)]
        for _ in range(N):
            power = matmul(power, M, p)
        ker = nullspace(power, N, p)
        out.append((P, len(ker) // deg))
    return out


# ---------------------------------------------------------------------------
# minimal primes


def minimal_primes(I: Ideal) -> list[PrimeComponent]:
    """The minimal primes of ``I`` (affine), sorted canonically."""
    comps = _minimal_primes(I)
    comps = _minimal_only(comps)
    for c in comps:
        if not c.ideal.contains_ideal(I):
            raise UnsupportedShape("internal check failed: component does not contain the ideal")
        if c.dimension == 0:
            c.residue_degree = c.ideal.vector_space_dimension()
    comps.sort(key=lambda c: (-c.dimension, c.key()))
    return comps


def _dedupe(comps):
    out = []
    for c in comps:
        if not any(c.same_as(d) for d in out):
            out.append(c)
    return out


def _minimal_only(comps):
    comps = _dedupe(comps)
    out = []
    for c in comps:
        if any(d is not c and c.contains(d) and not d.same_as(c) for d in comps):
            continue
        out.append(c)
    return out


def _note_ideal(I: Ideal):
    rec = recorder()
    if rec is not None:
        rec.add_ideal(I)


def _minimal_primes(I: Ideal) -> list[PrimeComponent]:
    ring = I.ring
    _note_ideal(I)
    gb = I.groebner()
    if not gb:
        return [PrimeComponent(Ideal(ring), "zero", ring.nvars, 1, True)]
    if len(gb) == 1 and gb[0].is_constant():
        return []
    drop = _unused_variables(I)
    if drop:
        sub_I, sub = _drop_variables(I, drop)
        out = []
        for c in _minimal_primes(sub_I):
            P = Ideal(ring, [g.to_ring(ring) for g in c.ideal.groebner()])
            out.append(
                PrimeComponent(P, "cylinder+" + c.certificate, c.dimension + len(drop),
                               c.residue_degree, c.complete_intersection)
            )
        return out
    lin = _linear_generator(I)
    if lin is not None:
        g, v = lin
        sub_I, sub, images = _substitute(I, g, v)
        out = []
        for c in _minimal_primes(sub_I):
            P = Ideal(ring, [h.to_ring(ring) for h in c.ideal.groebner()] + [g])
            out.append(
                PrimeComponent(P, "substitution+" + c.certificate, c.dimension,
                               c.residue_degree, c.complete_intersection)
            )
        return out
    if len(gb) == 1:
        return _principal(I, gb[0])
    if I.krull_dimension() == 0:
        out = []
        for P, deg in zero_dim_points(I):
            out.append(PrimeComponent(P, "zero-dimensional", 0, deg, True))
        return out
    gens = min([list(I.gens), list(gb)], key=len)
    common = gens[0]
    for g in gens[1:]:
        common = poly_gcd(common, g)
        if common.is_constant():
            break
    if not common.is_constant():
        out = _principal(Ideal(ring, [common]), common)
        rest = I.saturation(Ideal(ring, [common]))
        out.extend(_minimal_primes(rest))
        for c in out:
            if not c.certificate.startswith("divisorial"):
                c.certificate = "divisorial+" + c.certificate
        return _minimal_only(out)
    raise UnsupportedShape(
        "no primality strategy applies (not principal, zero-dimensional, or reducible "
        "to those by substitution, cylinders or common factors)",
        ideal=[str(g) for g in gb],
    )


def _principal(I: Ideal, f: Poly) -> list[PrimeComponent]:
    try:
        facs = factor(f)
    except DegreeTooLarge as exc:
        raise UnsupportedShape(str(exc)) from exc
    out = []
    rad = I.ring.one()
    for g, _ in facs:
        rad = rad * g
        out.append(PrimeComponent(Ideal(I.ring, [g]), "principal", I.ring.nvars - 1, 1, True))
    rec = recorder()
    if rec is not None:
        rec.add_squarefree(rad)
    return out


def is_prime_certified(I: Ideal) -> PrimeComponent | None:
    """Return a certified component equal to ``I`` if ``I`` is prime, else ``None``."""
    comps = minimal_primes(I)
    if len(comps) != 1:
        return None
    c = comps[0]
    if not I.contains_ideal(c.ideal):
        return None
    return c


# ---------------------------------------------------------------------------
# lengths


def dimension_over_function_field(J: Ideal, w_idx, u_idx) -> int | None:
    """``dim_K K[w]/J K[w]`` with ``K = k(u)``; ``None`` when infinite."""
    ring = J.ring
    order = BlockOrder([tuple(w_idx), tuple(u_idx)], nvars=ring.nvars)
    gb = J.groebner(order)
    lms = [tuple(g.leading_monomial(order)[i] for i in w_idx) for g in gb]
    if any(not any(m) for m in lms):
        return 0
    k = len(w_idx)
    if k == 0:
        return 1
    bounds = []
    for i in range(k):
        pure = [m[i] for m in lms if m[i] and all(m[j] == 0 for j in range(k) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    count = 0
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(all(a <= b for a, b in zip(m, e)) for m in lms):
            count += 1
    return count


def _power_step(I: Ideal, P: Ideal, Q: Ideal) -> Ideal:
    gens = list(I.gens)
    for a in P.groebner():
        for b in Q.groebner():
            gens.append(a * b)
    return Ideal(I.ring, gens)


def local_length(I: Ideal, P, method: str = "auto") -> int:
    """Length of ``(A/I)_P`` for a minimal prime ``P`` of ``I``.

    ``method="filtration"`` forces the power-filtration computation even for
    zero-dimensional ``I`` (where ``"auto"`` uses multiplication matrices).
    """
    if isinstance(P, PrimeComponent):
        P = P.ideal
    if P.ring != I.ring:
        raise NotMinimalPrime("prime lives in a different ring")
    if not P.contains_ideal(I):
        raise NotMinimalPrime("the prime does not contain the ideal")
    _note_ideal(I)
    _note_ideal(P)
    if method == "auto" and not I.is_unit() and I.is_zero_dimensional():
        return zero_dim_length(I, P)
    return _local_length(I, P)


def zero_dim_length(I: Ideal, P: Ideal) -> int:
    """Length at a closed point via generalized kernels of multiplication maps.

    ``A/I`` splits as the sum of its localizations; the common generalized
    kernel of multiplication by the generators of ``P`` is ``(A/I)_P``.
    """
    from .linalg import matmul, rank

    ring = I.ring
    p = ring.field.characteristic
    basis = I.standard_monomials()
    D = len(basis)
    stack = []
    for g in P.gens:
        g = I.normal_form(g)
        if not g:
            continue
        M = multiplication_matrix(I, g, basis)
        power, e = M, 1
        while e < D:
            power = matmul(power, power, p)
            e *= 2
        stack.extend(power)
    dim = D - (rank(stack, p) if stack else 0)
    residue = P.vector_space_dimension()
    if dim == 0 or dim % residue:
        raise NotMinimalPrime("the point is not a component of the ideal")
    return dim // residue


def _local_length(I: Ideal, P: Ideal) -> int:
    ring = I.ring
    if I.is_zero():
        if P.is_zero():
            return 1
        raise NotMinimalPrime("nonzero prime over the zero ideal is not minimal")
    drop = [i for i in _unused_variables(I) if i in _unused_variables(P)]
    if drop:
        sub_I, _ = _drop_variables(I, drop)
        sub_P, _ = _drop_variables(P, drop)
        return _local_length(sub_I, sub_P)
    lin = _linear_generator(I)
    if lin is not None:
        g, v = lin
        sub_I, sub, images = _substitute(I, g, v)
        sub_P = Ideal(sub, [f.compose(images, sub) for f in P.groebner()])
        return _local_length(sub_I, sub_P)
    gb = I.groebner()
    if len(gb) == 1:
        # principal: multiplicity of the irreducible generator of P in f
        pg = P.groebner()
        if len(pg) == 1:
            f = gb[0]
            h = pg[0]
            k = 0
            from .groebner import divide

            while True:
                qs, r = divide(f, [h])
                if r:
                    break
                f = qs[0]
                k += 1
            if k == 0:
                raise NotMinimalPrime("generator of the prime does not divide the ideal")
            return k
    indep = P.independent_sets()
    if not indep:
        raise NotMinimalPrime("unit ideal is not a prime")
    u = indep[0]
    w = tuple(i for i in range(ring.nvars) if i not in u)
    base = dimension_over_function_field(P, w, u)
    if not base:
        raise NotMinimalPrime("prime does not localize to a point over the function field")
    cap = current_limits().length_iterations
    Q = Ideal(ring, list(I.gens) + list(P.groebner()))
    prev = dimension_over_function_field(Q, w, u)
    if prev is None:
        raise NotMinimalPrime("I + P is not zero-dimensional over the function field")
    for _ in range(cap):
        Q2 = _power_step(I, P, Q)
        cur = dimension_over_function_field(Q2, w, u)
        if cur is None:
            raise NotMinimalPrime("localization is not of finite length")
        if cur == prev:
            _note_ideal(Q2)
            if cur % base:
                raise NotMinimalPrime("length is not an integer multiple of the residue degree")
            return cur // base
        prev = cur
        Q = Q2
    raise NotMinimalPrime(f"power filtration did not stabilize in {cap} steps", cap=cap)


def primary_component(I: Ideal, P: Ideal) -> Ideal:
    """``I + P^N`` for ``N`` large: the ``P``-primary component when ``P`` is maximal."""
    cap = current_limits().length_iterations
    Q = Ideal(I.ring, list(I.gens) + list(P.groebner()))
    prev = Q.vector_space_dimension()
    for _ in range(cap):
        Q2 = _power_step(I, P, Q)
        cur = Q2.vector_space_dimension()
        if cur == prev:
            return Q2
        prev = cur
        Q = Q2
    raise ResourceLimit(f"power filtration did not stabilize in {cap} steps", cap=cap)
