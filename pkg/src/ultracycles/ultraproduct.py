"""Finite-sample model of the ultraproduct of the prime fields.

Membership in the ultrafilter is replaced by "all but a capped number of
sampled primes, and those among the small primes".  Sentences whose truth
genuinely splits the sample are reported as filter-dependent instead of
being decided.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import gmpy2

from .config import current_limits
from .errors import (
    DepthExceeded,
    DivisionByZeroAlmostEverywhere,
    ParseError,
    PrimeTooLarge,
    ValidationError,
)


# ---------------------------------------------------------------------------
# prime samples


def primes_above(start: int, count: int) -> list[int]:
    """The first ``count`` primes strictly greater than ``start``."""
    out = []
    p = start
    while len(out) < count:
        p = int(gmpy2.next_prime(p))
        out.append(p)
    return out


@dataclass(frozen=True)
class PrimeSample:
    primes: tuple
    excluded: frozenset = frozenset()

    def __post_init__(self):
        ps = tuple(int(p) for p in self.primes)
        object.__setattr__(self, "primes", ps)
        object.__setattr__(self, "excluded", frozenset(int(p) for p in self.excluded))
        if not ps:
            raise ValidationError("prime sample is empty")
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise ValidationError("sample primes must be strictly ascending")
        if any(not gmpy2.is_prime(p) for p in ps):
            raise ValidationError("sample contains a non-prime")
        if self.excluded & set(ps):
            raise ValidationError("excluded primes must not be in the sample")

    @classmethod
    def first(cls, count: int, above: int = 1) -> "PrimeSample":
        return cls(tuple(primes_above(above, count)))

    @classmethod
    def odd(cls, count: int) -> "PrimeSample":
        return cls.first(count, above=2)

    def without(self, bad) -> "PrimeSample":
        bad = set(bad) & set(self.primes)
        return PrimeSample(tuple(p for p in self.primes if p not in bad),
                           self.excluded | frozenset(bad))

    def to_json(self) -> dict:
        return {
            "count": len(self.primes),
            "first": self.primes[0],
            "last": self.primes[-1],
            "excluded": sorted(self.excluded),
        }


# ---------------------------------------------------------------------------
# elements: a rational function of p plus finitely many overrides


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _peval_mod(a, p: int):
    """Value of a rational-coefficient polynomial at ``p`` modulo ``p``, or ``None``."""
    acc = 0
    for c in reversed(a):
        if c.denominator % p == 0:
            return None
        acc = (acc * p + c.numerator * pow(c.denominator, -1, p)) % p
    return acc


@dataclass(frozen=True)
class UltraElement:
    """The family ``(num(p)/den(p) mod p)_p`` with finitely many overrides."""

    num: tuple = ()
    den: tuple = (Fraction(1),)
    exceptions: tuple = ()  # sorted ((p, residue), ...)

    def __post_init__(self):
        num = tuple(_trim(Fraction(c) for c in self.num))
        den = tuple(_trim(Fraction(c) for c in self.den))
        if not den:
            raise ValidationError("denominator rule is zero")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        exc = tuple(sorted((int(p), int(v) % int(p)) for p, v in dict(self.exceptions).items()))
        object.__setattr__(self, "exceptions", exc)

    @classmethod
    def constant(cls, q) -> "UltraElement":
        return cls((Fraction(q),))

    @classmethod
    def polynomial(cls, coeffs) -> "UltraElement":
        """Rule ``sum coeffs[k] * p^k``."""
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def parse(cls, text: str) -> "UltraElement":
        """Rules like ``1/2``, ``p - 1``, ``3*p^2 + p/2``."""
        return cls(tuple(_parse_p_poly(text)))

    def value(self, p: int):
        """Residue in ``[0, p)`` or ``None`` where the rule is undefined."""
        ex = dict(self.exceptions)
        if p in ex:
            return ex[p]
        n = _peval_mod(list(self.num), p)
        d = _peval_mod(list(self.den), p)
        if n is None or d is None or d == 0:
            return None
        return n * pow(d, -1, p) % p

    def bad_primes(self, sample: PrimeSample) -> list[int]:
        return [p for p in sample.primes if self.value(p) is None]

    def _combine(self, other: "UltraElement", num, den, op) -> "UltraElement":
        primes = {p for p, _ in self.exceptions} | {p for p, _ in other.exceptions}
        exc = {}
        for p in primes:
            a, b = self.value(p), other.value(p)
            if a is not None and b is not None:
                exc[p] = op(a, b, p)
        res = UltraElement(tuple(num), tuple(den), tuple(exc.items()))
        # overrides that coincide with the rule are dropped
        clean = {p: v for p, v in exc.items() if UltraElement(res.num, res.den).value(p) != v}
        return UltraElement(res.num, res.den, tuple(clean.items()))

    def __add__(self, other: "UltraElement") -> "UltraElement":
        num = _padd(_pmul(list(self.num), list(other.den)), _pmul(list(other.num), list(self.den)))
        den = _pmul(list(self.den), list(other.den))
        return self._combine(other, num, den, lambda a, b, p: (a + b) % p)

    def __neg__(self) -> "UltraElement":
        return UltraElement(tuple(-c for c in self.num), self.den,
                            tuple((p, -v) for p, v in self.exceptions))

    def __sub__(self, other: "UltraElement") -> "UltraElement":
        return self + (-other)

    def __mul__(self, other: "UltraElement") -> "UltraElement":
        num = _pmul(list(self.num), list(other.num))
        den = _pmul(list(self.den), list(other.den))
        return self._combine(other, num, den, lambda a, b, p: a * b % p)

    def inverse(self, sample: PrimeSample, cap: int | None = None) -> "UltraElement":
        """Multiplicative inverse; zeros at up to ``cap`` sampled primes become overrides."""
        cap = current_limits().exception_cap if cap is None else cap
        zeros = [p for p in sample.primes if self.value(p) == 0]
        if len(zeros) > cap or not self.num:
            raise DivisionByZeroAlmostEverywhere(
                "element vanishes at too many sampled primes", zeros=zeros[:10], count=len(zeros)
            )
        exc = {}
        for p, v in self.exceptions:
            exc[p] = pow(v, -1, p) if v else 0
        for p in zeros:
            exc[p] = 0
        return UltraElement(self.den, self.num, tuple(exc.items()))

    def equivalent(self, other: "UltraElement", sample: PrimeSample,
                   cap: int | None = None) -> bool:
        """Equal at all but at most ``cap`` sampled primes."""
        cap = current_limits().exception_cap if cap is None else cap
        diff = [p for p in sample.primes if self.value(p) != other.value(p)]
        return len(diff) <= cap

    def to_json(self) -> dict:
        return {
            "numerator": [str(c) for c in self.num],
            "denominator": [str(c) for c in self.den],
            "exceptions": {str(p): v for p, v in self.exceptions},
        }


def _parse_p_poly(text: str):
    from .poly import PolyRing

    ring = PolyRing("Q", ["p"])
    f = ring(text)
    deg = f.degree(0) if f else -1
    coeffs = [Fraction(0)] * (deg + 1)
    for e, c in f.terms.items():
        coeffs[e[0]] = Fraction(int(c.numerator), int(c.denominator))
    return coeffs


# ---------------------------------------------------------------------------
# sentences


@dataclass(frozen=True)
class Term:
    op: str  # "var", "const", "+", "-", "*", "neg", "^"
    args: tuple = ()
    value: object = None

    def __str__(self):
        if self.op == "var":
            return self.value
        if self.op == "const":
            return str(self.value)
        if self.op == "neg":
            return f"-({self.args[0]})"
        if self.op == "^":
            return f"({self.args[0]})^{self.value}"
        return f"({self.args[0]} {self.op} {self.args[1]})"


@dataclass(frozen=True)
class Formula:
    op: str  # "=", "!=", "not", "and", "or", "->", "forall", "exists", "true", "false"
    args: tuple = ()
    var: str | None = None

    def __str__(self):
        if self.op in ("=", "!="):
            return f"{self.args[0]} {self.op} {self.args[1]}"
        if self.op in ("true", "false"):
            return self.op
        if self.op == "not":
            return f"~({self.args[0]})"
        if self.op in ("and", "or", "->"):
            sym = {"and": "&", "or": "|", "->": "->"}[self.op]
            return f"({self.args[0]} {sym} {self.args[1]})"
        return f"{self.op} {self.var}. {self.args[0]}"

    def depth(self) -> int:
        """Quantifier nesting depth."""
        if self.op in ("forall", "exists"):
            return 1 + self.args[0].depth()
        if self.op in ("=", "!=", "true", "false"):
            return 0
        return max(a.depth() for a in self.args)

    def free_variables(self) -> set:
        if self.op in ("=", "!="):
            return _term_vars(self.args[0]) | _term_vars(self.args[1])
        if self.op in ("true", "false"):
            return set()
        if self.op in ("forall", "exists"):
            return self.args[0].free_variables() - {self.var}
        out = set()
        for a in self.args:
            out |= a.free_variables()
        return out

    def negate(self) -> "Formula":
        return Formula("not", (self,))


def _term_vars(t: Term) -> set:
    if t.op == "var":
        return {t.value}
    out = set()
    for a in t.args:
        out |= _term_vars(a)
    return out


_SENT_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>->|=>|!=|/=|<->|[()+\-*^=.:~!&|,·≠¬∧∨→∀∃−])|(?P<bad>\S))"
)

_ALIASES = {
    "·": "*", "−": "-", "≠": "!=", "/=": "!=", "¬": "~", "!": "~", "not": "~",
    "∧": "&", "and": "&", "∨": "|", "or": "|", "→": "->", "=>": "->", "implies": "->",
    "∀": "forall", "∃": "exists", ":": ".",
}


def _sentence_tokens(text: str, line: int = 1, col0: int = 1):
    toks = []
    pos = 0
    text = text.rstrip()
    if text.endswith(";"):
        text = text[:-1]
    while pos < len(text):
        m = _SENT_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group("bad"):
            raise ParseError(f"unexpected character {m.group('bad')!r}", line=line,
                             column=col0 + m.start("bad"), token=m.group("bad"))
        kind = m.lastgroup
        val = m.group(kind)
        start = m.start(kind)
        val = _ALIASES.get(val, val)
        if kind == "name" and val in ("forall", "exists", "true", "false"):
            kind = "kw"
        elif kind == "name" and val in ("~", "&", "|", "->"):
            kind = "op"
        elif kind == "op" and val in ("forall", "exists"):
            kind = "kw"
        toks.append((kind, val, col0 + start))
        pos = m.end()
    toks.append(("end", "", col0 + len(text)))
    return toks


class _SentenceParser:
    """Grammar (loosest first): quantifiers, ``->`` (right assoc), ``|``, ``&``, ``~``, atoms."""

    def __init__(self, text: str, line: int = 1, col0: int = 1):
        self.toks = _sentence_tokens(text, line, col0)
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(f"{msg} at {tok[1]!r}" if tok[1] else f"{msg} at end of input",
                         line=self.line, column=tok[2], token=tok[1])

    def expect(self, val):
        t = self.peek()
        if t[1] != val:
            self.error(f"expected {val!r}")
        return self.take()

    def parse(self) -> Formula:
        f = self.formula()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return f

    def formula(self) -> Formula:
        t = self.peek()
        if t[0] == "kw" and t[1] in ("forall", "exists"):
            self.take()
            names = []
            while self.peek()[0] == "name":
                names.append(self.take()[1])
                if self.peek()[1] == ",":
                    self.take()
            if not names:
                self.error("expected a variable after quantifier")
            self.expect(".")
            body = self.formula()
            for v in reversed(names):
                body = Formula(t[1], (body,), v)
            return body
        left = self.disjunction()
        if self.peek()[1] == "->":
            self.take()
            right = self.formula()
            return Formula("->", (left, right))
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek()[1] == "|":
            self.take()
            f = Formula("or", (f, self.conjunction()))
        return f

    def conjunction(self) -> Formula:
        f = self.negation()
        while self.peek()[1] == "&":
            self.take()
            f = Formula("and", (f, self.negation()))
        return f

    def negation(self) -> Formula:
        t = self.peek()
        if t[1] == "~":
            self.take()
            return Formula("not", (self.negation(),))
        if t[0] == "kw" and t[1] in ("forall", "exists"):
            return self.formula()
        return self.atom()

    def atom(self) -> Formula:
        t = self.peek()
        if t[0] == "kw" and t[1] in ("true", "false"):
            self.take()
            return Formula(t[1])
        if t[1] == "(":
            save = self.i
            try:
                return self.comparison()
            except ParseError:
                self.i = save
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        return self.comparison()

    def comparison(self) -> Formula:
        left = self.term()
        t = self.peek()
        if t[1] not in ("=", "!="):
            self.error("expected '=' or '!='")
        self.take()
        right = self.term()
        return Formula(t[1], (left, right))

    def term(self) -> Term:
        t = self.product()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = Term(op, (t, self.product()))
        return t

    def product(self) -> Term:
        t = self.unary()
        while self.peek()[1] == "*":
            self.take()
            t = Term("*", (t, self.unary()))
        return t

    def unary(self) -> Term:
        if self.peek()[1] == "-":
            self.take()
            return Term("neg", (self.unary(),))
        return self.power()

    def power(self) -> Term:
        base = self.primary()
        if self.peek()[1] == "^":
            self.take()
            t = self.peek()
            if t[0] != "num":
                self.error("exponent must be a nonnegative integer")
            self.take()
            return Term("^", (base,), int(t[1]))
        return base

    def primary(self) -> Term:
        t = self.peek()
        if t[0] == "num":
            self.take()
            return Term("const", (), int(t[1]))
        if t[0] == "name":
            self.take()
            return Term("var", (), t[1])
        if t[1] == "(":
            self.take()
            inner = self.term()
            self.expect(")")
            return inner
        self.error("expected a term")


def parse_sentence(text: str, line: int = 1, col0: int = 1) -> Formula:
    return _SentenceParser(text, line, col0).parse()


def _compile_term(t: Term, p: int):
    op = t.op
    if op == "const":
        c = t.value % p
        return lambda env: c
    if op == "var":
        name = t.value
        return lambda env: env[name]
    if op == "neg":
        a = _compile_term(t.args[0], p)
        return lambda env: (-a(env)) % p
    if op == "^":
        a = _compile_term(t.args[0], p)
        k = t.value
        return lambda env: pow(a(env), k, p)
    a = _compile_term(t.args[0], p)
    b = _compile_term(t.args[1], p)
    if op == "+":
        return lambda env: (a(env) + b(env)) % p
    if op == "-":
        return lambda env: (a(env) - b(env)) % p
    return lambda env: a(env) * b(env) % p


def _compile(f: Formula, p: int):
    op = f.op
    if op == "true":
        return lambda env: True
    if op == "false":
        return lambda env: False
    if op in ("=", "!="):
        a = _compile_term(f.args[0], p)
        b = _compile_term(f.args[1], p)
        if op == "=":
            return lambda env: a(env) == b(env)
        return lambda env: a(env) != b(env)
    if op == "not":
        a = _compile(f.args[0], p)
        return lambda env: not a(env)
    if op in ("and", "or", "->"):
        a = _compile(f.args[0], p)
        b = _compile(f.args[1], p)
        if op == "and":
            return lambda env: a(env) and b(env)
        if op == "or":
            return lambda env: a(env) or b(env)
        return lambda env: (not a(env)) or b(env)
    body = _compile(f.args[0], p)
    var = f.var
    if op == "exists":
        def ex(env):
            env = dict(env)
            for v in range(p):
                env[var] = v
                if body(env):
                    return True
            return False
        return ex

    def fa(env):
        env = dict(env)
        for v in range(p):
            env[var] = v
            if not body(env):
                return False
        return True
    return fa


def evaluate_sentence(s: Formula | str, p: int) -> bool:
    """Truth of a closed sentence in ``F_p`` by exhaustive quantifier enumeration."""
    if isinstance(s, str):
        s = parse_sentence(s)
    limits = current_limits()
    if not gmpy2.is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if p > limits.prime_bound:
        raise PrimeTooLarge(f"{p} exceeds the brute-force bound {limits.prime_bound}",
                            p=p, bound=limits.prime_bound)
    d = s.depth()
    if d > limits.quantifier_depth:
        raise DepthExceeded(f"quantifier depth {d} exceeds {limits.quantifier_depth}",
                            depth=d, bound=limits.quantifier_depth)
    free = s.free_variables()
    if free:
        raise ValidationError(f"sentence has free variables {sorted(free)}")
    return bool(_compile(s, p)({}))


# ---------------------------------------------------------------------------
# verdicts

HOLDS = "cofinite-holds"
FAILS = "cofinite-fails"
SPLIT = "filter-dependent"


@dataclass
class TransferReport:
    outcomes: dict  # prime -> bool (or an outcome label for commutation reports)
    verdict: str
    exceptions: list
    sample: PrimeSample
    densities: dict = field(default_factory=dict)
    split_confirmed: bool = False
    subject: str = ""

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "verdict": self.verdict,
            "exceptions": list(self.exceptions),
            "densities": dict(self.densities),
            "split_confirmed": self.split_confirmed,
            "sample": self.sample.to_json(),
            "outcomes": {str(p): v for p, v in self.outcomes.items()},
        }


def classify(successes: dict, sample: PrimeSample, cap: int | None = None,
             density_threshold: float = 0.1):
    """Verdict for per-prime booleans over ``sample`` (which must be > 2*cap primes).

    Cofinite means: at most ``cap`` exceptional primes, all in the lower half
    of the sample, so the property is stable in the tail.
    """
    cap = current_limits().exception_cap if cap is None else cap
    primes = list(sample.primes)
    if len(primes) <= 2 * cap:
        raise ValidationError(f"sample of {len(primes)} primes is too small for exception cap {cap}")
    median = primes[(len(primes) - 1) // 2]
    fails = [p for p in primes if not successes[p]]
    holds = [p for p in primes if successes[p]]
    dens = {"holds": len(holds) / len(primes), "fails": len(fails) / len(primes)}
    if len(fails) <= cap and all(p <= median for p in fails):
        return HOLDS, fails, dens, False
    if len(holds) <= cap and all(p <= median for p in holds):
        return FAILS, holds, dens, False
    split = min(dens.values()) >= density_threshold
    return SPLIT, [], dens, split


def los_verdict(s: Formula | str, sample: PrimeSample, cap: int | None = None,
                density_threshold: float = 0.1) -> TransferReport:
    if isinstance(s, str):
        s = parse_sentence(s)
    outcomes = {p: evaluate_sentence(s, p) for p in sample.primes}
    verdict, exc, dens, split = classify(outcomes, sample, cap, density_threshold)
    return TransferReport(outcomes, verdict, exc, sample, dens, split, str(s))


def n_times_one(n: int) -> str:
    """The sentence ``n·1 != 0`` written with repeated addition."""
    if n < 1:
        raise ValueError("n must be positive")
    return " + ".join(["1"] * n) + " != 0"


def prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
