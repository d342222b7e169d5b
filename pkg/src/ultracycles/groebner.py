"""Buchberger's algorithm, normal forms and the usual ideal operations.

The inner loops work directly on ``{exponent: coefficient}`` dicts with a
heap of order keys, which is the fastest simple scheme in pure Python.
"""

from __future__ import annotations

import heapq
import itertools
from operator import add, sub

from .config import current_limits
from .errors import MixedContext, NotHomogeneous, ResourceLimit, VariableClash
from .poly import GREVLEX, BlockOrder, MonomialOrder, Poly, PolyRing


def _mask(e) -> int:
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


class _Reducer:
    __slots__ = ("lm", "mask", "tail")

    def __init__(self, lm, tail):
        self.lm = lm
        self.mask = _mask(lm)
        self.tail = tail


def _monic_terms(terms: dict, order: MonomialOrder, p: int):
    lm = max(terms, key=order.key)
    lc = terms[lm]
    if p:
        if lc != 1:
            inv = pow(lc, -1, p)
            terms = {e: c * inv % p for e, c in terms.items()}
    elif lc != 1:
        terms = {e: c / lc for e, c in terms.items()}
    return lm, terms


def _make_reducer(terms: dict, order: MonomialOrder, p: int) -> _Reducer:
    lm, terms = _monic_terms(terms, order, p)
    tail = [(e, c) for e, c in terms.items() if e != lm]
    return _Reducer(lm, tail)


def _reduce(terms: dict, reducers, order: MonomialOrder, p: int, full: bool = True) -> dict:
    """Normal form of ``terms`` (consumed) modulo monic ``reducers``."""
    if not terms or not reducers:
        return terms
    nk = order.neg_key
    heap = [(nk(e), e) for e in terms]
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    rem = {}
    get = terms.get
    while heap:
        _, e = pop(heap)
        c = get(e)
        if c is None:
            continue
        del terms[e]
        emask = _mask(e)
        for r in reducers:
            if r.mask & ~emask:
                continue
            lm = r.lm
            ok = True
            for a, b in zip(lm, e):
                if a > b:
                    ok = False
                    break
            if not ok:
                continue
            q = tuple(map(sub, e, lm))
            for te, tc in r.tail:
                ne = tuple(map(add, te, q))
                v = get(ne)
                if v is None:
                    v = -c * tc
                    if p:
                        v %= p
                    terms[ne] = v
                    push(heap, (nk(ne), ne))
                else:
                    v = v - c * tc
                    if p:
                        v %= p
                    if v:
                        terms[ne] = v
                    else:
                        del terms[ne]
            break
        else:
            rem[e] = c
            if not full:
                rem.update(terms)
                return rem
    return rem


def normal_form(f: Poly, basis, order: MonomialOrder = GREVLEX) -> Poly:
    """Fully reduced remainder of ``f`` on division by ``basis``.

    The basis need not be a Gröbner basis; the result then depends on the
    order in which divisors are tried (first divisor wins).
    """
    ring = f.ring
    p = ring.field.characteristic
    reducers = []
    for g in basis:
        if g.ring != ring:
            raise MixedContext(f"{g.ring} vs {ring}")
        if g.terms:
            reducers.append(_make_reducer(dict(g.terms), order, p))
    return Poly(ring, _reduce(dict(f.terms), reducers, order, p))


def divide(f: Poly, divisors, order: MonomialOrder = GREVLEX):
    """Multivariate division: ``f = sum(q_i * g_i) + r``; returns ``(qs, r)``."""
    ring = f.ring
    F = ring.field
    divisors = list(divisors)
    qs = [ring.zero() for _ in divisors]
    r = ring.zero()
    h = f
    lead = [(g.leading_term(order) if g else None) for g in divisors]
    while h:
        e, c = h.leading_term(order)
        for i, g in enumerate(divisors):
            if lead[i] is None:
                continue
            ge, gc = lead[i]
            if all(a <= b for a, b in zip(ge, e)):
                q = tuple(map(sub, e, ge))
                coef = c * F.inv(gc)
                if F.characteristic:
                    coef %= F.characteristic
                qs[i] = qs[i] + ring.monomial(q, 1).scale(coef)
                h = h - g.mul_term(q, coef)
                break
        else:
            r = r + ring.monomial(e, 1).scale(c)
            h = h - ring.monomial(e, 1).scale(c)
    return qs, r


# ---------------------------------------------------------------------------
# Buchberger


class _Elem:
    __slots__ = ("lm", "terms", "sugar", "red")

    def __init__(self, lm, terms, sugar, red):
        self.lm = lm
        self.terms = terms
        self.sugar = sugar
        self.red = red


def _lcm(a, b):
    return tuple(map(max, a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _component(e, module_rank: int):
    if not module_rank:
        return None
    tail = e[-module_rank:]
    for i, x in enumerate(tail):
        if x:
            return i
    return None


def buchberger(polys, order: MonomialOrder = GREVLEX, module_rank: int = 0, pair_cap: int | None = None):
    """Reduced monic Gröbner basis of the polynomials ``polys``.

    Pairs are processed smallest lcm first (the normal strategy), which
    behaves far better than sugar ordering for lex and block orders.

    With ``module_rank = m`` the last ``m`` variables are treated as basis
    vectors of a free module: every input must be linear in them and pairs
    whose leading terms live in different components are skipped.
    """
    polys = [f for f in polys if f.terms]
    if not polys:
        return []
    ring = polys[0].ring
    for f in polys:
        if f.ring != ring:
            raise MixedContext(f"{f.ring} vs {ring}")
    p = ring.field.characteristic
    if pair_cap is None:
        pair_cap = current_limits().pair_cap
    key = order.key

    elems: list[_Elem] = []
    active: list[int] = []
    pairs: set = set()
    heap: list = []
    created = 0

    def reducers():
        return [elems[i].red for i in active]

    def add_elem(terms: dict, sugar: int):
        nonlocal created
        lm, terms = _monic_terms(terms, order, p)
        red = _Reducer(lm, [(e, c) for e, c in terms.items() if e != lm])
        h = len(elems)
        elems.append(_Elem(lm, terms, sugar, red))
        comp_h = _component(lm, module_rank)
        # Gebauer-Moeller update
        cand = []
        for g in active:
            if module_rank and _component(elems[g].lm, module_rank) != comp_h:
                continue
            cand.append((g, _lcm(elems[g].lm, lm)))
        created += len(cand)
        if created > pair_cap:
            raise ResourceLimit(
                f"Buchberger pair count exceeded {pair_cap}", pair_cap=pair_cap, pairs=created
            )
        # chain criterion among new pairs
        keep = []
        for idx, (g, l) in enumerate(cand):
            coprime = _coprime(elems[g].lm, lm)
            dominated = False
            if not coprime:
                for j, (g2, l2) in enumerate(cand):
                    if j == idx:
                        continue
                    if _divides(l2, l) and (l2 != l or j < idx):
                        dominated = True
                        break
            if not dominated:
                keep.append((g, l, coprime))
        # drop old pairs killed by the new leading monomial
        for pr in list(pairs):
            i, j, l = pr
            if _divides(lm, l) and _lcm(elems[i].lm, lm) != l and _lcm(elems[j].lm, lm) != l:
                pairs.discard(pr)
        for g, l, coprime in keep:
            if coprime:
                continue
            pr = (g, h, l)
            pairs.add(pr)
            s = max(elems[g].sugar + sum(l) - sum(elems[g].lm), sugar + sum(l) - sum(lm))
            heapq.heappush(heap, (key(l), s, g, h, l))
        active[:] = [g for g in active if not _divides(lm, elems[g].lm)]
        active.append(h)

    start = sorted(
        (dict(f.terms) for f in polys),
        key=lambda t: key(max(t, key=key)),
    )
    for terms in start:
        r = _reduce(terms, reducers(), order, p)
        if r:
            add_elem(r, max(sum(e) for e in r))

    while heap:
        _, s, i, j, l = heapq.heappop(heap)
        pr = (i, j, l)
        if pr not in pairs:
            continue
        pairs.discard(pr)
        a, b = elems[i], elems[j]
        qa = tuple(map(sub, l, a.lm))
        qb = tuple(map(sub, l, b.lm))
        terms: dict = {}
        for e, c in a.terms.items():
            if e != a.lm:
                terms[tuple(map(add, e, qa))] = c
        for e, c in b.terms.items():
            if e == b.lm:
                continue
            ne = tuple(map(add, e, qb))
            v = terms.get(ne)
            if v is None:
                terms[ne] = (-c) % p if p else -c
            else:
                v = v - c
                if p:
                    v %= p
                if v:
                    terms[ne] = v
                else:
                    del terms[ne]
        if not terms:
            continue
        r = _reduce(terms, reducers(), order, p)
        if r:
            add_elem(r, s)

    # reduced basis: minimal, then tail reduced
    basis = [elems[i] for i in active]
    basis.sort(key=lambda el: key(el.lm))
    out = []
    for idx, el in enumerate(basis):
        others = [b.red for k, b in enumerate(basis) if k != idx]
        tail = {e: c for e, c in el.terms.items() if e != el.lm}
        tail = _reduce(tail, others, order, p)
        tail[el.lm] = ring.field.one
        out.append(Poly(ring, tail))
    out.sort(key=lambda f: key(f.leading_monomial(order)), reverse=True)
    return out


def is_groebner_basis(basis, order: MonomialOrder = GREVLEX) -> bool:
    """Check Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = [g for g in basis if g]
    for a, b in itertools.combinations(basis, 2):
        if spoly(a, b, order) and normal_form(spoly(a, b, order), basis, order):
            return False
    return True


def spoly(a: Poly, b: Poly, order: MonomialOrder = GREVLEX) -> Poly:
    ea, ca = a.leading_term(order)
    eb, cb = b.leading_term(order)
    F = a.ring.field
    l = _lcm(ea, eb)
    return a.mul_term(tuple(map(sub, l, ea)), F.inv(ca)) - b.mul_term(tuple(map(sub, l, eb)), F.inv(cb))


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal of a polynomial ring, with reduced Gröbner bases cached per order."""

    def __init__(self, ring: PolyRing, gens=()):
        self.ring = ring
        gl = []
        for g in gens:
            g = ring(g) if not isinstance(g, Poly) else g
            if g.ring != ring:
                raise MixedContext(f"{g.ring} vs {ring}")
            if g:
                gl.append(g)
        self.gens = tuple(gl)
        self._gb: dict = {}
        self.homogeneous = all(g.is_homogeneous() for g in self.gens)

    @classmethod
    def parse(cls, ring: PolyRing, texts) -> "Ideal":
        return cls(ring, [ring(t) for t in texts])

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'}) in {self.ring}"

    # -- Gröbner bases ------------------------------------------------------
    def groebner(self, order: MonomialOrder = GREVLEX) -> tuple[Poly, ...]:
        gb = self._gb.get(order)
        if gb is None:
            gb = tuple(buchberger(self.gens, order))
            self._gb[order] = gb
        return gb

    gb = groebner

    def set_groebner(self, basis, order: MonomialOrder = GREVLEX) -> None:
        """Install a basis already known to be the reduced one for ``order``."""
        self._gb[order] = tuple(basis)

    def normal_form(self, f: Poly, order: MonomialOrder = GREVLEX) -> Poly:
        return normal_form(self.ring(f), self.groebner(order), order)

    def contains(self, f) -> bool:
        return not self.normal_form(self.ring(f))

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        self._check(other)
        return all(self.contains(g) for g in other.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring, self.groebner()))

    def leading_monomials(self, order: MonomialOrder = GREVLEX):
        return [g.leading_monomial(order) for g in self.groebner(order)]

    def _check(self, other: "Ideal"):
        if other.ring != self.ring:
            raise MixedContext(f"{other.ring} vs {self.ring}")

    # -- operations ---------------------------------------------------------
    def __add__(self, other: "Ideal") -> "Ideal":
        return self.sum(other)

    def sum(self, other) -> "Ideal":
        if not isinstance(other, Ideal):
            other = Ideal(self.ring, list(other))
        self._check(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return self.product(other)

    def product(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def power(self, k: int) -> "Ideal":
        out = Ideal(self.ring, [self.ring.one()])
        for _ in range(k):
            out = Ideal(self.ring, _interreduce_gens(out.product(self).gens))
        return out

    def intersection(self, other: "Ideal") -> "Ideal":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring)
        t = self.ring.fresh_variable("t_")
        big = self.ring.extended([t], 0)
        tv = big.gen(t)
        gens = [tv * g.to_ring(big) for g in self.gens]
        gens += [(1 - tv) * g.to_ring(big) for g in other.gens]
        order = BlockOrder([(0,)], nvars=big.nvars)
        gb = buchberger(gens, order)
        kept = [g for g in gb if g.degree(0) <= 0]
        out = Ideal(self.ring, [g.to_ring(self.ring) for g in kept])
        return out

    def quotient(self, other) -> "Ideal":
        """The colon ideal ``(self : other)``."""
        if isinstance(other, Poly):
            other = Ideal(self.ring, [other])
        self._check(other)
        result = None
        for g in other.gens:
            part = self._quotient_poly(g)
            result = part if result is None else result.intersection(part)
        return result if result is not None else Ideal(self.ring, [self.ring.one()])

    def _quotient_poly(self, g: Poly) -> "Ideal":
        inter = self.intersection(Ideal(self.ring, [g]))
        return Ideal(self.ring, [h.exact_div(g) for h in inter.gens])

    def saturation(self, other, method: str = "auto") -> "Ideal":
        """``(self : other^inf)``.

        ``method="iterate"`` repeats colon ideals until they stabilize (capped);
        ``"auto"`` intersects the principal saturations of the generators of
        ``other``, each computed with one elimination.
        """
        if isinstance(other, Poly):
            other = Ideal(self.ring, [other])
        self._check(other)
        if method == "iterate":
            cap = current_limits().saturation_iterations
            cur = self
            for _ in range(cap):
                nxt = cur.quotient(other)
                if nxt.contains_ideal(cur) and cur.contains_ideal(nxt):
                    return cur
                cur = nxt
            raise ResourceLimit(f"saturation did not stabilize in {cap} steps", cap=cap)
        result = None
        for g in other.gens:
            part = self._saturate_poly(g)
            result = part if result is None else result.intersection(part)
        return result if result is not None else Ideal(self.ring, [self.ring.one()])

    def _saturate_poly(self, g: Poly) -> "Ideal":
        if g.is_constant():
            return self
        if self.is_zero():
            return self
        t = self.ring.fresh_variable("t_")
        big = self.ring.extended([t], 0)
        tv = big.gen(t)
        gens = [f.to_ring(big) for f in self.gens] + [tv * g.to_ring(big) - 1]
        order = BlockOrder([(0,)], nvars=big.nvars)
        gb = buchberger(gens, order)
        kept = [f.to_ring(self.ring) for f in gb if f.degree(0) <= 0]
        return Ideal(self.ring, kept)

    def eliminate(self, variables) -> "Ideal":
        """Intersection with the subring in the variables *not* listed."""
        idx = sorted({self.ring.index(v) for v in variables})
        if not idx:
            return self
        order = BlockOrder([tuple(idx)], nvars=self.ring.nvars)
        gb = self.groebner(order)
        kept = [g for g in gb if all(g.degree(i) <= 0 for i in idx)]
        out = Ideal(self.ring, kept)
        return out

    def elimination_ideal(self, keep) -> "Ideal":
        keep_idx = {self.ring.index(v) for v in keep}
        return self.eliminate([i for i in range(self.ring.nvars) if i not in keep_idx])

    def restrict(self, keep) -> "Ideal":
        """Elimination ideal moved into the polynomial ring on ``keep`` only."""
        names = [self.ring.variables[self.ring.index(v)] for v in keep]
        sub_ring = self.ring.with_variables(names)
        el = self.elimination_ideal(names)
        return Ideal(sub_ring, [g.to_ring(sub_ring) for g in el.gens])

    def to_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.gens])

    def map_coefficients(self, fn) -> "Ideal":
        """Apply ``fn`` (a polynomial map such as mod-p reduction) to each generator."""
        gens = [fn(g) for g in self.gens]
        ring = gens[0].ring if gens else None
        if ring is None:
            raise ValueError("cannot infer ring of a zero ideal; use to_ring")
        return Ideal(ring, gens)

    # -- dimension ----------------------------------------------------------
    def independent_sets(self, order: MonomialOrder = GREVLEX):
        """All maximal sets of variables independent modulo the leading-term ideal."""
        lms = [_mask(m) for m in self.leading_monomials(order)]
        n = self.ring.nvars
        if any(m == 0 for m in lms):
            return []
        best = []
        for size in range(n, -1, -1):
            for combo in itertools.combinations(range(n), size):
                s = 0
                for i in combo:
                    s |= 1 << i
                if all(m & ~s for m in lms):
                    best.append(combo)
            if best:
                return best
        return best

    def krull_dimension(self) -> int:
        """Dimension of the quotient ring; -1 for the unit ideal."""
        sets = self.independent_sets()
        if not sets:
            return -1
        return len(sets[0])

    def is_zero_dimensional(self) -> bool:
        return self.krull_dimension() == 0

    def standard_monomials(self, order: MonomialOrder = GREVLEX):
        """Monomials outside the leading-term ideal (finite only for dimension 0)."""
        lms = self.leading_monomials(order)
        n = self.ring.nvars
        if any(not any(m) for m in lms):
            return []
        bounds = []
        for i in range(n):
            pure = [m[i] for m in lms if m[i] and all(m[j] == 0 for j in range(n) if j != i)]
            if not pure:
                raise ValueError("ideal is not zero-dimensional")
            bounds.append(min(pure))
        out = []
        for e in itertools.product(*(range(b) for b in bounds)):
            if not any(_divides(m, e) for m in lms):
                out.append(e)
        return out

    def vector_space_dimension(self) -> int:
        return len(self.standard_monomials())

    # -- projective helpers -------------------------------------------------
    def require_homogeneous(self):
        if not self.homogeneous:
            raise NotHomogeneous("ideal has a non-homogeneous generator")

    def homogenize(self, var: str, ring: PolyRing | None = None) -> "Ideal":
        """Ideal of the projective closure: homogenized grevlex Gröbner basis."""
        if var in self.ring.variables:
            raise VariableClash(f"{var} already a variable")
        ring = ring or self.ring.extended([var])
        gb = self.groebner(GREVLEX)
        return Ideal(ring, [g.homogenize_into(ring, var) for g in gb])

    def dehomogenize(self, var, value=1) -> "Ideal":
        gens = [g.dehomogenize(var, value) for g in self.gens]
        i = self.ring.index(var)
        vs = self.ring.variables[:i] + self.ring.variables[i + 1:]
        return Ideal(self.ring.with_variables(vs), gens)


def _interreduce_gens(gens):
    seen = set()
    out = []
    for g in gens:
        if g and g not in seen:
            seen.add(g)
            out.append(g)
    return out


def ideal(ring: PolyRing, *gens) -> Ideal:
    return Ideal(ring, [ring(g) for g in gens])
