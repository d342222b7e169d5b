"""Polynomial factorization.

Univariate over GF(p): squarefree decomposition, distinct-degree and
equal-degree (Cantor-Zassenhaus) splitting.  Univariate over Q: rational
roots, then Zassenhaus (factor mod a good prime, Hensel lift, recombine).
Several variables: Kronecker substitution to one variable, factor, and
recombine candidate factors by trial division.

Dense univariate polynomials are lists of coefficients, lowest degree first.
"""

from __future__ import annotations

import contextvars
import itertools
import math
import random
from functools import reduce

import gmpy2
from gmpy2 import mpq, mpz

from .config import current_limits
from .errors import DegreeTooLarge, UnsupportedShape
from .poly import QQ, GF, Poly, PolyRing

# ---------------------------------------------------------------------------
# dense arithmetic modulo m (m prime unless stated otherwise)


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def pmod_norm(a, m):
    return _trim([c % m for c in a])


def padd(a, b, m):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)]
    return _trim(out)


def psub(a, b, m):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)]
    return _trim(out)


def pmul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % m for c in out])


def pscale(a, c, m):
    return _trim([x * c % m for x in a])


def pdivmod(a, b, p):
    """Division with remainder over GF(p) (``b`` nonzero)."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % p
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = (a[k + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


def prem(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, prem(a, b, p)
    return pmonic(a, p)


def pderiv(a, m):
    return _trim([(i * a[i]) % m for i in range(1, len(a))])


def ppowmod(base, e, f, p):
    result = [1]
    base = prem(base, f, p)
    while e:
        if e & 1:
            result = prem(pmul(result, base, p), f, p)
        e >>= 1
        if e:
            base = prem(pmul(base, base, p), f, p)
    return result


def pexgcd(a, b, p):
    """``(g, s, t)`` with ``s*a + t*b = g`` monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return pscale(r0, inv, p), pscale(s0, inv, p), pscale(t0, inv, p)


# ---------------------------------------------------------------------------
# factorization over GF(p)


def _pth_root(a, p):
    # a(x) = b(x^p) in characteristic p; coefficients are fixed by Frobenius
    return [a[i] for i in range(0, len(a), p)]


def squarefree_gfp(f, p):
    """Monic squarefree decomposition ``[(g, k), ...]`` of monic ``f``."""
    out = []
    f = pmonic(f, p)

    def rec(f, mult):
        if len(f) <= 1:
            return
        d = pderiv(f, p)
        if not d:
            rec(_pth_root(f, p), mult * p)
            return
        c = pgcd(f, d, p)
        w = pdivmod(f, c, p)[0]
        i = 1
        while len(w) > 1:
            y = pgcd(w, c, p)
            z = pdivmod(w, y, p)[0]
            if len(z) > 1:
                out.append((pmonic(z, p), i * mult))
            i += 1
            w = y
            c = pdivmod(c, y, p)[0]
        if len(c) > 1:
            rec(_pth_root(c, p), mult * p)

    rec(f, 1)
    return out


def ddf_gfp(f, p):
    """Distinct-degree factorization of a monic squarefree ``f``."""
    out = []
    i = 1
    h = [0, 1]
    f = list(f)
    while len(f) - 1 >= 2 * i:
        h = ppowmod(h, p, f, p)
        g = pgcd(f, psub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, i))
            f = pdivmod(f, g, p)[0]
            h = prem(h, f, p)
        i += 1
    if len(f) > 1:
        out.append((pmonic(f, p), len(f) - 1))
    return out


def edf_gfp(f, d, p, rng):
    """Split a monic squarefree ``f`` whose factors all have degree ``d``."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t = list(a)
            cur = list(a)
            for _ in range(d - 1):
                cur = prem(pmul(cur, cur, p), f, p)
                t = padd(t, cur, p)
            b = t
        else:
            b = psub(ppowmod(a, (p ** d - 1) // 2, f, p), [1], p)
        g = pgcd(f, b, p)
        if 1 < len(g) < len(f):
            h = pdivmod(f, g, p)[0]
            return edf_gfp(g, d, p, rng) + edf_gfp(h, d, p, rng)


def factor_gfp_dense(f, p, seed: int = 0):
    """Monic irreducible factors with multiplicity, for dense ``f`` over GF(p)."""
    rng = random.Random(seed)
    out = []
    for g, k in squarefree_gfp(f, p):
        for h, d in ddf_gfp(g, p):
            for irr in edf_gfp(h, d, p, rng):
                out.append((irr, k))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return out


def is_squarefree_gfp(f, p) -> bool:
    f = pmod_norm(f, p)
    if len(f) <= 1:
        return True
    return len(pgcd(f, pderiv(f, p), p)) == 1


# ---------------------------------------------------------------------------
# dense arithmetic over Z and Q


def zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def zcontent(a):
    return reduce(math.gcd, (int(c) for c in a), 0)


def zprimitive(a):
    c = zcontent(a)
    if c == 0:
        return []
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def zdivexact(a, b):
    """Exact division of integer polynomials, or ``None`` if not exact."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return None if a else []
    q = [0] * (len(a) - db)
    lb = b[-1]
    for k in range(len(a) - 1 - db, -1, -1):
        num = a[k + db]
        if num % lb:
            return None
        c = num // lb
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    if any(a[:db]):
        return None
    return _trim(q)


def qdivmod(a, b):
    a = [mpq(x) for x in a]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    lb = mpq(b[-1])
    q = [mpq(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lb
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def qgcd(a, b):
    a, b = _trim([mpq(x) for x in a]), _trim([mpq(x) for x in b])
    while b:
        a, b = b, qdivmod(a, b)[1]
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def to_integer_primitive(a):
    """Clear denominators of a rational dense polynomial and make it primitive."""
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (int(mpq(c).denominator) for c in a), 1)
    return zprimitive([int(mpq(c) * den) for c in a])


def squarefree_q(f):
    """Squarefree decomposition over Q of an integer polynomial: ``[(g, k)]`` primitive."""
    out = []
    f = to_integer_primitive(f)
    d = _trim([i * f[i] for i in range(1, len(f))])
    c = qgcd(f, d)
    w = qdivmod(f, c)[0]
    i = 1
    while len(w) > 1:
        y = qgcd(w, c)
        z = qdivmod(w, y)[0]
        if len(z) > 1:
            out.append((to_integer_primitive(z), i))
        i += 1
        w = y
        c = qdivmod(c, y)[0]
    return out


def _rational_roots(f):
    """Rational roots of a primitive integer polynomial (only if cheap)."""
    a0 = abs(f[0])
    an = abs(f[-1])
    if a0 == 0:
        return [mpq(0)]
    if a0 > 10 ** 6 or an > 10 ** 6:
        return None
    def divisors(n):
        return [d for d in range(1, n + 1) if n % d == 0] if n <= 10 ** 4 else None
    dp, dq = divisors(a0), divisors(an)
    if dp is None or dq is None:
        return None
    roots = set()
    for u in dp:
        for v in dq:
            for s in (1, -1):
                r = mpq(s * u, v)
                acc = mpq(0)
                for c in reversed(f):
                    acc = acc * r + c
                if acc == 0:
                    roots.add(r)
    return sorted(roots)


def _mignotte_bound(f) -> int:
    n = len(f) - 1
    norm = math.isqrt(sum(int(c) * int(c) for c in f)) + 1
    return (1 << n) * norm * abs(int(f[-1]))


def _hensel_step(f, g, h, s, t, m):
    """Quadratic Hensel lifting: from ``f = gh (mod m)`` to mod ``m^2``."""
    m2 = m * m
    e = [c % m2 for c in _zsub(f, zmul(g, h))]
    e = _trim(e)
    q, r = _divmod_monic_mod(zmul(s, e), h, m2)
    g1 = _trim([c % m2 for c in _zadd(g, _zadd(zmul(t, e), zmul(q, g)))])
    h1 = _trim([c % m2 for c in _zadd(h, r)])
    b = _trim([c % m2 for c in _zsub(_zadd(zmul(s, g1), zmul(t, h1)), [1])])
    c_, d_ = _divmod_monic_mod(zmul(s, b), h1, m2)
    s1 = _trim([c % m2 for c in _zsub(s, d_)])
    t1 = _trim([c % m2 for c in _zsub(t, _zadd(zmul(t, b), zmul(c_, g1)))])
    return g1, h1, s1, t1


def _zadd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _zsub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _divmod_monic_mod(a, b, m):
    """Division by a monic ``b`` with coefficients reduced mod ``m``."""
    a = [c % m for c in a]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] % m
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = (a[k + j] - c * b[j]) % m
    return _trim(q), _trim(a[:db])


def _hensel_lift(f, factors, p, k):
    """Lift monic modular factors of ``f`` (lc(f) = 1 mod p assumed absorbed) to mod ``p^k``."""
    # f is made monic mod p^k by the caller
    if len(factors) == 1:
        return [pmod_norm(f, p ** k)]
    g = factors[0]
    h = reduce(lambda a, b: pmul(a, b, p), factors[1:], [1])
    _, s, t = pexgcd(g, h, p)
    m = p
    while m < p ** k:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m = m * m
    mk = p ** k
    g = [c % mk for c in g]
    h = [c % mk for c in h]
    return [_trim(g)] + _hensel_lift(h, factors[1:], p, k)


def _sym(c, m):
    c %= m
    return c - m if c > m // 2 else c


def zassenhaus(f):
    """Irreducible factors over Z of a primitive squarefree integer polynomial."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    lc = f[-1]
    # choose a prime where f stays squarefree with the fewest factors
    best = None
    tried = 0
    for p in _primes_from(3):
        if lc % p == 0:
            continue
        fp = pmod_norm(f, p)
        if not is_squarefree_gfp(fp, p):
            continue
        facs = [g for g, _ in factor_gfp_dense(fp, p)]
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if len(facs) == 1:
            return [f]
        tried += 1
        if tried >= 5:
            break
    p, facs = best
    bound = 2 * _mignotte_bound(f) + 1
    k = 1
    while p ** k < bound:
        k += 1
    m = p ** k
    inv_lc = pow(lc, -1, m)
    fm = [c * inv_lc % m for c in f]
    lifted = _hensel_lift(fm, facs, p, k)
    result = []
    remaining = list(range(len(lifted)))
    cur = list(f)
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for combo in itertools.combinations(remaining, size):
            lcc = cur[-1]
            prod = [lcc % m]
            for i in combo:
                prod = [c % m for c in zmul(prod, lifted[i])]
            cand = zprimitive([_sym(c, m) for c in prod])
            q = zdivexact(cur, cand)
            if q is not None:
                result.append(cand)
                cur = q
                remaining = [i for i in remaining if i not in combo]
                found = True
                break
        if not found:
            size += 1
    result.append(zprimitive(cur))
    return result


def _primes_from(start):
    p = start - 1
    while True:
        p = int(gmpy2.next_prime(p))
        yield p


def factor_q_dense(f):
    """Irreducible primitive integer factors of a rational dense polynomial."""
    out = []
    for g, k in squarefree_q(f):
        roots = _rational_roots(g)
        if roots:
            for r in roots:
                lin = to_integer_primitive([-r, mpq(1)])
                out.append((lin, k))
                g = zdivexact(g, lin)
        if len(g) > 1:
            for h in zassenhaus(g):
                out.append((h, k))
    out.sort(key=lambda t: (len(t[0]), [abs(c) for c in t[0][::-1]], t[0][::-1], t[1]))
    return out


# ---------------------------------------------------------------------------
# bad-prime recording


_RECORDER: contextvars.ContextVar = contextvars.ContextVar("ultracycles_factor_recorder", default=None)


class PolyRecorder:
    """Collects the data a rational computation depended on, to judge primes.

    * univariate polynomials that were factored: a prime is unsafe when it
      divides the leading coefficient or when the polynomial stops being
      squarefree mod p (equivalently, p divides the discriminant);
    * integers whose vanishing mod p would change a branch;
    * ideals whose Gröbner bases drove a decision: a prime is unsafe unless
      the reduced basis mod p equals the reduction of the rational basis;
    * squarefree hypersurfaces: their singular-locus ideal is checked the
      same way, and primes up to the degree are unsafe.
    """

    def __init__(self):
        self.polys: list[list[int]] = []
        self.integers: set[int] = set()
        self.ideals: dict = {}
        self.degrees: set[int] = set()

    def __enter__(self):
        self._token = _RECORDER.set(self)
        return self

    def __exit__(self, *exc):
        _RECORDER.reset(self._token)

    def add_poly(self, f):
        """Record a univariate polynomial through its squarefree part."""
        f = to_integer_primitive(f)
        if len(f) <= 1:
            return
        rad = [1]
        for g, _ in squarefree_q(f):
            rad = zmul(rad, g)
        self.polys.append(rad)
        if f[-1] != 1:
            self.add_integer(f[-1])

    def add_integer(self, n):
        n = abs(int(n))
        if n > 1:
            self.integers.add(n)

    def add_ideal(self, I):
        if I.ring.field.characteristic:
            return
        key = (I.ring.variables, tuple(sorted(str(g) for g in I.gens)))
        if key not in self.ideals:
            self.ideals[key] = I

    def add_squarefree(self, f: Poly):
        """Record that ``f`` is squarefree over Q."""
        from .groebner import Ideal

        if f.ring.field.characteristic or f.total_degree() < 1:
            return
        self.degrees.add(f.total_degree())
        gens = [f] + [f.derivative(i) for i in range(f.ring.nvars) if f.degree(i) > 0]
        self.add_ideal(Ideal(f.ring, gens))

    def is_bad(self, p: int) -> bool:
        return bool(self.reasons(p, first_only=True))

    def reasons(self, p: int, first_only: bool = False) -> list[str]:
        out = []
        for n in sorted(self.integers):
            if n % p == 0:
                out.append(f"divides {n}")
                if first_only:
                    return out
        if any(p <= d for d in self.degrees):
            out.append("not larger than a hypersurface degree")
            if first_only:
                return out
        for f in self.polys:
            if f[-1] % p == 0:
                out.append("divides a leading coefficient")
            elif not is_squarefree_gfp(pmod_norm(f, p), p):
                out.append("divides a discriminant")
            else:
                continue
            if first_only:
                return out
        for I in self.ideals.values():
            if unlucky(I, p):
                out.append("changes a Gröbner basis")
                if first_only:
                    return out
        return out


def unlucky(I, p: int) -> bool:
    """True unless the reduction of the rational reduced Gröbner basis is the mod-p one."""
    from .errors import BadPrime
    from .groebner import Ideal
    from .poly import GF

    ring_p = I.ring.with_field(GF(p))
    try:
        gb_q = [g.to_ring(ring_p) for g in I.groebner()]
        gens_p = [g.to_ring(ring_p) for g in I.gens]
    except BadPrime:
        return True
    if any(not g for g in gb_q):
        return True
    gb_p = Ideal(ring_p, gens_p).groebner()
    return set(gb_p) != set(gb_q)


def recorder() -> PolyRecorder | None:
    return _RECORDER.get()


# ---------------------------------------------------------------------------
# public univariate interface


def _univariate_var(f: Poly):
    sup = f.support()
    if len(sup) > 1:
        raise ValueError("polynomial is not univariate")
    return sup[0] if sup else 0


def _to_dense(f: Poly, i: int):
    d = f.degree(i)
    out = [f.ring.field.zero] * (max(d, 0) + 1)
    for e, c in f.terms.items():
        out[e[i]] = c
    return _trim(out)


def _from_dense(ring: PolyRing, i: int, coeffs) -> Poly:
    terms = {}
    n = ring.nvars
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[i] = k
            terms[tuple(e)] = c
    return ring.from_dict(terms)


def univariate_factor(f: Poly, bound: int | None = None):
    """Irreducible factors of a univariate polynomial as ``[(g, k), ...]``.

    Over GF(p) the factors are monic; over Q they are primitive with integer
    coefficients and positive leading coefficient.  The product of the
    powers equals ``f`` up to a nonzero constant.
    """
    if not f:
        raise ValueError("cannot factor zero")
    if bound is None:
        bound = current_limits().factor_degree
    i = _univariate_var(f)
    d = f.degree(i)
    if d > bound:
        raise DegreeTooLarge(f"degree {d} exceeds factoring bound {bound}", degree=d, bound=bound)
    if d <= 0:
        return []
    ring = f.ring
    p = ring.field.characteristic
    dense = _to_dense(f, i)
    if p:
        facs = factor_gfp_dense(dense, p, seed=current_limits().seed)
    else:
        rec = recorder()
        if rec is not None:
            rec.add_poly(dense)
        facs = factor_q_dense(dense)
    return [(_from_dense(ring, i, g), k) for g, k in facs]


# ---------------------------------------------------------------------------
# several variables


def _content_monomial(f: Poly):
    n = f.ring.nvars
    return tuple(min(e[i] for e in f.terms) for i in range(n))


def _quick_irreducible(f: Poly) -> bool:
    """True if ``f`` is linear in some variable with a constant coefficient there."""
    for i in range(f.ring.nvars):
        if f.degree(i) == 1:
            lead = f.coefficient(i, 1)
            if lead.is_constant():
                return True
    if f.total_degree() == 1:
        return True
    return False


def _univariate_in(f: Poly):
    sup = f.support()
    return sup[0] if len(sup) == 1 else None


def factor(f: Poly, bound: int | None = None):
    """Irreducible factors ``[(g, k)]`` of a polynomial in any number of variables.

    Multivariate inputs go through a Kronecker substitution whose image must
    have degree at most ``bound`` (default: the strategy factoring bound).
    """
    if not f:
        raise ValueError("cannot factor zero")
    if bound is None:
        bound = current_limits().strategy_factor_degree
    ring = f.ring
    out: dict = {}
    mono = _content_monomial(f)
    for i, k in enumerate(mono):
        if k:
            out[ring.gen(i)] = k
    if any(mono):
        f = Poly(ring, {tuple(a - b for a, b in zip(e, mono)): c for e, c in f.terms.items()})
    for g, k in _factor_no_monomial(f, bound):
        g = _normalize(g)
        out[g] = out.get(g, 0) + k
    items = sorted(out.items(), key=lambda t: (t[0].total_degree(), str(t[0])))
    return items


def _normalize(g: Poly) -> Poly:
    """Monic over GF(p); over Q integral primitive with positive grevlex leading coefficient."""
    if g.ring.field.characteristic:
        return g.monic()
    den = 1
    for c in g.terms.values():
        den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
    ints = {e: int(c * den) for e, c in g.terms.items()}
    cont = reduce(math.gcd, ints.values(), 0)
    lc = ints[g.leading_monomial()]
    if lc < 0:
        cont = -cont
    return Poly(g.ring, {e: mpq(c // cont) for e, c in ints.items()})


def _homogenize_at(g: Poly, i: int) -> Poly:
    d = g.total_degree()
    out = {}
    for e, c in g.terms.items():
        t = list(e)
        t[i] = d - sum(e)
        out[tuple(t)] = c
    return Poly(g.ring, out)


def _factor_no_monomial(f: Poly, bound: int):
    if f.is_constant():
        return []
    sup = f.support()
    if len(sup) >= 3 and f.is_homogeneous():
        # factors of a homogeneous polynomial are homogeneous: drop one variable
        z = sup[-1]
        flat = f.evaluate({z: 1})
        out = []
        deg = 0
        for g, k in _factor_no_monomial(flat, bound):
            out.append((_homogenize_at(g, z), k))
            deg += k * g.total_degree()
        if f.total_degree() > deg:
            out.append((f.ring.gen(z), f.total_degree() - deg))
        return out
    i = _univariate_in(f)
    if i is not None:
        return univariate_factor(f, bound=bound)
    if _quick_irreducible(f):
        return [(f, 1)]
    result = []
    cur = f
    while not cur.is_constant():
        if _quick_irreducible(cur) or _univariate_in(cur) is not None:
            if _univariate_in(cur) is not None:
                result.extend(univariate_factor(cur, bound=bound))
            else:
                result.append((cur, 1))
            break
        g = _first_factor(cur, bound)
        k = 0
        while True:
            q = _exact_divide(cur, g)
            if q is None:
                break
            cur = q
            k += 1
        result.append((g, k))
    return result


def _exact_divide(f: Poly, g: Poly):
    from .groebner import divide

    qs, r = divide(f, [g])
    if r:
        return None
    return qs[0]


def _first_factor(f: Poly, bound: int) -> Poly:
    """An irreducible factor of ``f`` (``f`` itself when irreducible)."""
    ring = f.ring
    n = ring.nvars
    degs = [f.degree(i) for i in range(n)]
    used = [i for i in range(n) if degs[i] > 0]
    weights = {}
    w = 1
    for i in used:
        weights[i] = w
        w *= degs[i] + 1
    total = sum(weights[i] * degs[i] for i in used)
    if total > bound:
        raise DegreeTooLarge(
            f"Kronecker image degree {total} exceeds bound {bound}", degree=total, bound=bound
        )
    uni = [ring.field.zero] * (total + 1)
    for e, c in f.terms.items():
        k = sum(weights[i] * e[i] for i in used)
        uni[k] += c
    p = ring.field.characteristic
    if p:
        uni = [c % p for c in uni]
        facs = factor_gfp_dense(_trim(uni), p, seed=current_limits().seed)
    else:
        facs = factor_q_dense(_trim(uni))
    pieces = []
    for g, k in facs:
        pieces.extend([g] * k)
    m = len(pieces)
    order = sorted(used, key=lambda i: -weights[i])

    def unkron(u):
        terms = {}
        for k, c in enumerate(u):
            if not c:
                continue
            e = [0] * n
            rem = k
            for i in order:
                e[i], rem = divmod(rem, weights[i])
            if rem:
                return None
            t = tuple(e)
            if any(t[i] > degs[i] for i in range(n)):
                return None
            terms[t] = c
        return ring.from_dict(terms)

    mulf = (lambda a, b: pmul(a, b, p)) if p else zmul
    seen = set()
    for size in range(1, m // 2 + 1):
        for combo in itertools.combinations(range(m), size):
            key = tuple(sorted(tuple(pieces[i]) for i in combo))
            if key in seen:
                continue
            seen.add(key)
            u = reduce(mulf, (pieces[i] for i in combo), [1])
            cand = unkron(u)
            if cand is None or cand.is_constant():
                continue
            if _exact_divide(f, cand) is not None:
                return cand
    return f


def is_irreducible(f: Poly, bound: int | None = None) -> bool:
    facs = factor(f, bound)
    return len(facs) == 1 and facs[0][1] == 1


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor (normalized) via the principal intersection."""
    from .groebner import Ideal

    if not f:
        return _normalize(g) if g else g
    if not g:
        return _normalize(f)
    inter = Ideal(f.ring, [f]).intersection(Ideal(f.ring, [g]))
    (l,) = [h for h in inter.groebner()][:1] or [None]
    q = _exact_divide(f * g, l)
    return _normalize(q)
