"""Exact multivariate polynomials over the rationals and prime fields.

Coefficients over Q are ``gmpy2.mpq``; over GF(p) they are Python ints in
``range(p)``.  A polynomial is a dict from exponent tuples to nonzero
coefficients, so the canonical form is independent of the monomial order;
orders only matter when terms are listed or leading terms are taken.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from operator import add, sub

import gmpy2
from gmpy2 import mpq, mpz

from .errors import BadPrime, MixedContext, ParseError, VariableClash


# ---------------------------------------------------------------------------
# coefficient fields


class RationalField:
    characteristic = 0
    zero = mpq(0)
    one = mpq(1)

    def __call__(self, value):
        if isinstance(value, str):
            return mpq(Fraction(value))
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        return mpq(value)

    def inv(self, a):
        return self.one / a

    def to_str(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_fraction(self, a) -> Fraction:
        return Fraction(int(a.numerator), int(a.denominator))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    @property
    def name(self) -> str:
        return "Q"


class PrimeField:
    zero = 0
    one = 1

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not a prime")
        self.p = p
        self.characteristic = p

    def __call__(self, value):
        p = self.p
        if isinstance(value, int):
            return value % p
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, (Fraction,)) or type(value) is type(mpq(0)):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise BadPrime(p)
            return num * pow(den, -1, p) % p
        return int(value) % p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return pow(a, -1, self.p)

    def to_str(self, a) -> str:
        return str(a)

    def to_fraction(self, a) -> Fraction:
        return Fraction(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def name(self) -> str:
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec) -> RationalField | PrimeField:
    """``"Q"``/``"QQ"``/``0`` give the rationals, a prime or ``"GF(p)"``/``"F101"`` a prime field."""
    if isinstance(spec, (RationalField, PrimeField)):
        return spec
    if isinstance(spec, int):
        return QQ if spec == 0 else GF(spec)
    s = str(spec).strip()
    if s in ("Q", "QQ", "rationals"):
        return QQ
    m = re.fullmatch(r"(?:GF\((\d+)\)|F_?(\d+)|(\d+))", s)
    if not m:
        raise ValueError(f"unknown field {spec!r}")
    return GF(int(next(g for g in m.groups() if g)))


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Base class: ``key(e)`` is increasing in the order, so the leading
    monomial is ``max(monomials, key=order.key)``."""

    name = "order"

    def __init__(self):
        self._cache: dict = {}
        self._neg: dict = {}

    def key(self, e):
        k = self._cache.get(e)
        if k is None:
            k = self._cache[e] = self._key(e)
        return k

    def neg_key(self, e):
        """Componentwise negated key, for use with a min-heap."""
        k = self._neg.get(e)
        if k is None:
            k = self._neg[e] = tuple(-x for x in self.key(e))
        return k

    def _key(self, e):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash((type(self).__name__, self._ident()))

    def _ident(self):
        return ()

    def __repr__(self):
        return self.name


class Lex(MonomialOrder):
    name = "lex"

    def _key(self, e):
        return e


class GrevLex(MonomialOrder):
    name = "grevlex"

    def _key(self, e):
        return (sum(e),) + tuple(-x for x in reversed(e))


class BlockOrder(MonomialOrder):
    """Product order: compare the first block, then the next, ...

    ``blocks`` is a sequence of index tuples, optionally paired with
    ``"lex"``/``"grevlex"`` for the order inside that block (grevlex default).
    Variables not mentioned form a final grevlex block.  Eliminating a set of
    variables means putting them in the first block.
    """

    name = "block"

    def __init__(self, blocks, nvars: int | None = None):
        super().__init__()
        norm = []
        seen = set()
        for b in blocks:
            if isinstance(b, tuple) and len(b) == 2 and isinstance(b[1], str):
                idx, kind = b
            else:
                idx, kind = b, "grevlex"
            idx = tuple(idx)
            if kind not in ("lex", "grevlex"):
                raise ValueError(kind)
            seen.update(idx)
            if idx:
                norm.append((idx, kind))
        if nvars is not None:
            rest = tuple(i for i in range(nvars) if i not in seen)
            if rest:
                norm.append((rest, "grevlex"))
        self.blocks = tuple(norm)
        self.nvars = nvars

    @classmethod
    def split(cls, nvars: int, k: int) -> "BlockOrder":
        """Elimination order with the first ``k`` variables in the leading block."""
        return cls([tuple(range(k))], nvars=nvars)

    def _key(self, e):
        out = []
        for idx, kind in self.blocks:
            sub_e = [e[i] for i in idx]
            if kind == "lex":
                out.extend(sub_e)
            else:
                out.append(sum(sub_e))
                out.extend(-x for x in reversed(sub_e))
        return tuple(out)

    def _ident(self):
        return self.blocks

    def __repr__(self):
        return f"BlockOrder({self.blocks})"


LEX = Lex()
GREVLEX = GrevLex()


def order_from_name(name: str) -> MonomialOrder:
    name = name.lower()
    if name == "lex":
        return LEX
    if name in ("grevlex", "degrevlex"):
        return GREVLEX
    raise ValueError(f"unknown monomial order {name!r}")


# ---------------------------------------------------------------------------
# rings and polynomials


class PolyRing:
    def __init__(self, field, variables):
        self.field = field_from_spec(field)
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise VariableClash(f"repeated variable in {self.variables}")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.nvars = len(self.variables)
        self._index = {v: i for i, v in enumerate(self.variables)}
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.variables == other.variables
        )

    def __hash__(self):
        return hash((self.field, self.variables))

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.variables)}]"

    def index(self, var) -> int:
        if isinstance(var, int):
            return var
        if isinstance(var, Poly):
            (e,) = var.terms
            return e.index(1)
        try:
            return self._index[var]
        except KeyError:
            raise VariableClash(f"{var!r} is not a variable of {self}") from None

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self._zero_exp: self.field.one})

    def constant(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self._zero_exp: c} if c else {})

    def gen(self, var) -> "Poly":
        i = self.index(var)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    @property
    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exp, coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def from_dict(self, terms) -> "Poly":
        F = self.field
        out = {}
        for e, c in terms.items():
            c = F(c)
            if c:
                out[tuple(e)] = c
        return Poly(self, out)

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            return value.to_ring(self)
        if isinstance(value, str):
            return parse_poly(value, self)
        return self.constant(value)

    def with_field(self, field) -> "PolyRing":
        return PolyRing(field, self.variables)

    def with_variables(self, variables) -> "PolyRing":
        return PolyRing(self.field, variables)

    def extended(self, new_vars, position: int | None = None) -> "PolyRing":
        new_vars = tuple(new_vars)
        clash = set(new_vars) & set(self.variables)
        if clash:
            raise VariableClash(f"variables {sorted(clash)} already present")
        if position is None:
            position = self.nvars
        vs = self.variables[:position] + new_vars + self.variables[position:]
        return PolyRing(self.field, vs)

    def fresh_variable(self, stem: str = "t") -> str:
        name = stem
        i = 0
        while name in self._index:
            i += 1
            name = f"{stem}{i}"
        return name


def _exp_add(a, b):
    return tuple(map(add, a, b))


def _exp_sub(a, b):
    return tuple(map(sub, a, b))


def _divides(a, b) -> bool:
    """Monomial a divides monomial b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic protocol -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise MixedContext(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.characteristic
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Poly(self.ring, {e: (-c) % p for e, c in self.terms.items()})
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            return self.scale(c)
        other = self._coerce(other)
        p = self.ring.field.characteristic
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        if not c:
            return self.ring.zero()
        p = self.ring.field.characteristic
        if p:
            return Poly(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, exp, coeff) -> "Poly":
        p = self.ring.field.characteristic
        if p:
            return Poly(self.ring, {_exp_add(e, exp): c * coeff % p for e, c in self.terms.items()})
        return Poly(self.ring, {_exp_add(e, exp): c * coeff for e, c in self.terms.items()})

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division (raises ``ValueError`` if not exact)."""
        from .groebner import divide

        q, r = divide(self, [other], GREVLEX)
        if r:
            raise ValueError("division is not exact")
        return q[0]

    # -- inspection ---------------------------------------------------------
    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX):
        return max(self.terms, key=order.key)

    def leading_term(self, order: MonomialOrder = GREVLEX):
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[max(self.terms, key=order.key)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var=None) -> int:
        if var is None:
            return self.total_degree()
        i = self.ring.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coefficient(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero)

    def support(self) -> tuple[int, ...]:
        """Indices of variables that occur."""
        used = [False] * self.ring.nvars
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(i for i, u in enumerate(used) if u)

    def coefficient(self, var, k: int) -> "Poly":
        """Coefficient of ``var**k`` as a polynomial in the other variables."""
        i = self.ring.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return Poly(self.ring, out)

    def derivative(self, var) -> "Poly":
        i = self.ring.index(var)
        F = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = F(e[i]) * c
                if F.characteristic:
                    v %= F.characteristic
                if v:
                    out[e[:i] + (e[i] - 1,) + e[i + 1:]] = v
        return Poly(self.ring, out)

    # -- substitution and ring changes --------------------------------------
    def evaluate(self, values: dict) -> "Poly":
        """Substitute field values for some variables (result stays in this ring)."""
        F = self.ring.field
        idx = {self.ring.index(k): F(v) for k, v in values.items()}
        out = self.ring.zero()
        acc: dict = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for i, v in idx.items():
                if e2[i]:
                    c = c * (v ** e2[i]) if not F.characteristic else c * pow(v, e2[i], F.characteristic)
                    e2[i] = 0
            t = tuple(e2)
            acc[t] = acc.get(t, 0) + c
        p = F.characteristic
        out = {e: (c % p if p else c) for e, c in acc.items()}
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    def compose(self, images, ring: PolyRing | None = None) -> "Poly":
        """Substitute ``images[i]`` for the i-th variable; images live in ``ring``."""
        images = list(images)
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = ring or (images[0].ring if images else self.ring)
        images = [target(im) for im in images]
        powers: list[dict] = [dict() for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        result = target.zero()
        for e, c in self.terms.items():
            term = target.constant(self.ring.field.to_fraction(c)) if target.field != self.ring.field else target.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def to_ring(self, ring: PolyRing) -> "Poly":
        """Move to a ring with (a superset or permutation of) the same variable names."""
        if ring == self.ring:
            return self
        src = self.ring.variables
        pos = []
        for i, v in enumerate(src):
            j = ring._index.get(v)
            pos.append(j)
        n = ring.nvars
        F = ring.field
        convert = F != self.ring.field
        out = {}
        for e, c in self.terms.items():
            t = [0] * n
            for i, k in enumerate(e):
                if k:
                    j = pos[i]
                    if j is None:
                        raise VariableClash(f"variable {src[i]} missing from {ring}")
                    t[j] = k
            if convert:
                c = F(self.ring.field.to_fraction(c))
                if not c:
                    continue
            out[tuple(t)] = c
        return Poly(ring, out)

    def homogenize(self, new_var: str, position: int | None = None) -> "Poly":
        """Homogenize with a new variable (inserted at ``position``, default last)."""
        if new_var in self.ring.variables:
            raise VariableClash(f"{new_var} already a variable")
        ring = self.ring.extended([new_var], position)
        return self.homogenize_into(ring, new_var)

    def homogenize_into(self, ring: PolyRing, var: str) -> "Poly":
        """Homogenize into ``ring``, which has this ring's variables plus ``var``."""
        if var in self.ring.variables:
            raise VariableClash(f"{var} already a variable")
        d = self.total_degree()
        j = ring.index(var)
        lifted = self.to_ring(ring)
        out = {}
        for e, c in lifted.terms.items():
            t = list(e)
            t[j] = d - sum(e)
            out[tuple(t)] = c
        return Poly(ring, out)

    def dehomogenize(self, var, value=1) -> "Poly":
        """Set ``var`` to ``value`` and drop it from the ring."""
        i = self.ring.index(var)
        ring = self.ring.with_variables(self.ring.variables[:i] + self.ring.variables[i + 1:])
        F = self.ring.field
        v = F(value)
        p = F.characteristic
        acc: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                c = c * (pow(v, k, p) if p else v ** k)
            t = e[:i] + e[i + 1:]
            acc[t] = acc.get(t, 0) + c
        if p:
            acc = {e: c % p for e, c in acc.items()}
        return Poly(ring, {e: c for e, c in acc.items() if c})

    # -- printing -----------------------------------------------------------
    def __str__(self):
        return self.to_str()

    def to_str(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        F = self.ring.field
        names = self.ring.variables
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k
            )
            if F.characteristic:
                neg = False
                cs = str(c)
            else:
                neg = c < 0
                cs = F.to_str(-c if neg else c)
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-", body) if neg else ("+", body))
        sign, body = parts[0]
        s = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self.to_str()!r}, {self.ring!r})"


def reduce_mod_p(f: Poly, p: int) -> Poly:
    """Coefficientwise image of a rational polynomial in GF(p)[same variables]."""
    if f.ring.field.characteristic != 0:
        raise MixedContext("reduce_mod_p expects a polynomial over Q")
    F = GF(p)
    ring = f.ring.with_field(F)
    out = {}
    for e, c in f.terms.items():
        den = int(c.denominator)
        if den % p == 0:
            raise BadPrime(p)
        v = int(c.numerator) * pow(den, -1, p) % p
        if v:
            out[e] = v
    return Poly(ring, out)


def homogenize(f: Poly, new_var: str) -> Poly:
    return f.homogenize(new_var)


def dehomogenize(f: Poly, var, value=1) -> Poly:
    return f.dehomogenize(var, value)


# ---------------------------------------------------------------------------
# text syntax


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)|(?P<op>\*\*|[-+*/^()]))"
)


def tokenize(text: str, offset: int = 0, line: int = 1, col0: int = 1):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            j = pos
            while j < len(text) and text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", line, col0 + j, text[j])
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), col0 + start))
        pos = m.end()
    return toks


class _PolyParser:
    def __init__(self, text: str, ring: PolyRing, line: int = 1, col0: int = 1):
        self.ring = ring
        self.line = line
        self.toks = tokenize(text, line=line, col0=col0)
        self.i = 0
        self.end_col = col0 + len(text)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end_col)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg):
        kind, val, col = self.peek()
        raise ParseError(msg, self.line, col, val or "")

    def parse(self) -> Poly:
        if not self.toks:
            self.fail("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            self.fail("unexpected token")
        return p

    def expr(self) -> Poly:
        kind, val, _ = self.peek()
        neg = False
        if val in ("+", "-"):
            self.take()
            neg = val == "-"
        p = self.term()
        if neg:
            p = -p
        while True:
            kind, val, _ = self.peek()
            if val in ("+", "-"):
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if val == "*":
                self.take()
                p = p * self.factor()
            elif val == "/":
                self.take()
                q = self.factor()
                if not q.is_constant() or not q:
                    self.fail("division only by nonzero constants")
                p = p * self.ring.field.inv(q.constant_coefficient())
            elif kind in ("num", "name") or val == "(":
                # juxtaposition such as ``3x`` or ``2(x+1)`` multiplies
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Poly:
        base = self.atom()
        kind, val, _ = self.peek()
        if val in ("^", "**"):
            self.take()
            kind, num, _ = self.peek()
            if kind != "num":
                self.fail("expected integer exponent")
            self.take()
            return base ** int(num)
        return base

    def atom(self) -> Poly:
        kind, val, col = self.peek()
        if kind == "num":
            self.take()
            return self.ring.constant(int(val))
        if kind == "name":
            self.take()
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}", self.line, col, val)
            return self.ring.gen(val)
        if val == "(":
            self.take()
            p = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return p
        if val == "-":
            self.take()
            return -self.factor()
        self.fail("expected a number, variable or '('")


def parse_poly(text: str, ring: PolyRing, line: int = 1, col0: int = 1) -> Poly:
    """Parse ``3/2*x^2*y - z + 1`` style text in ``ring``."""
    return _PolyParser(text, ring, line, col0).parse()


def ring_from_spec(spec: str) -> PolyRing:
    """``"Q[x,y]"`` or ``"GF(7)[x,y]"`` to a ring."""
    m = re.fullmatch(r"\s*([^\[\]]+?)\s*\[([^\]]*)\]\s*", spec)
    if not m:
        raise ValueError(f"bad ring spec {spec!r}")
    variables = [v.strip() for v in m.group(2).split(",") if v.strip()]
    return PolyRing(field_from_spec(m.group(1)), variables)
