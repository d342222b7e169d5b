"""Hilbert series, Hilbert polynomial and degree of homogeneous ideals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .errors import NotHomogeneous, ValidationError
from .groebner import Ideal
from .poly import GREVLEX


def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _shift(a, k):
    return [0] * k + list(a)


def series_numerator(monos) -> list[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of k[x]/(monos)."""
    memo: dict = {}

    def rec(gens: tuple) -> list[int]:
        if gens in memo:
            return memo[gens]
        if not gens:
            res = [1]
        elif all(
            not any(a and b for a, b in zip(g, h)) for g, h in itertools.combinations(gens, 2)
        ):
            res = [1]
            for g in gens:
                res = _poly_mul(res, _poly_sub([1], _shift([1], sum(g))))
        else:
            # pivot on the last generator: N(M) = N(M') - t^deg(m) N(M' : m)
            m = gens[-1]
            rest = gens[:-1]
            colon = tuple(
                sorted(_minimalize(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest))
            )
            res = _poly_sub(rec(rest), _shift(rec(colon), sum(m)))
        memo[gens] = res
        return res

    gens = tuple(sorted(_minimalize(monos)))
    return rec(gens)


def _divide_one_minus_t(a):
    """Exact division of an integer polynomial by (1 - t), or None."""
    # a(t) = (1 - t) q(t)  =>  q_k = a_0 + ... + a_k
    q = []
    acc = 0
    for c in a[:-1]:
        acc += c
        q.append(acc)
    if acc + a[-1] != 0:
        return None
    return q or [0]


def _binom_poly(shift: int, k: int):
    """Coefficients (low first) of binom(s + shift, k) as a polynomial in s."""
    poly = [Fraction(1)]
    for j in range(k):
        # multiply by (s + shift - j)
        c = shift - j
        new = [Fraction(0)] * (len(poly) + 1)
        for i, a in enumerate(poly):
            new[i] += a * c
            new[i + 1] += a
        poly = new
    f = factorial(k)
    return [a / f for a in poly]


def eval_poly(coeffs, s):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def poly_to_str(coeffs, var: str = "t") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        cs = str(abs(c))
        sign = "-" if c < 0 else "+"
        if k == 0:
            body = cs
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if abs(c) == 1 else f"{cs}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


@dataclass
class HilbertData:
    numerator: list[int]
    reduced_numerator: list[int]
    dimension: int
    polynomial: list[Fraction]
    degree: int
    regularity: int
    checked_range: tuple[int, int] = (0, -1)
    nvars: int = 0
    leading_monomials: list = field(default_factory=list, repr=False)

    @property
    def projective_dimension(self) -> int:
        return self.dimension - 1

    def hilbert_function(self, s: int) -> int:
        """Dimension of the degree-s piece, by counting standard monomials."""
        return count_standard_monomials(self.leading_monomials, self.nvars, s)

    def polynomial_at(self, s: int) -> Fraction:
        return eval_poly(self.polynomial, s)

    def polynomial_str(self, var: str = "t") -> str:
        return poly_to_str(self.polynomial, var)

    def to_json(self) -> dict:
        return {
            "numerator": list(self.numerator),
            "h_vector": list(self.reduced_numerator),
            "krull_dimension": self.dimension,
            "projective_dimension": self.dimension - 1,
            "hilbert_polynomial": self.polynomial_str(),
            "hilbert_polynomial_coefficients": [str(c) for c in self.polynomial],
            "degree": self.degree,
            "regularity_bound": self.regularity,
        }


def count_standard_monomials(lms, n: int, s: int) -> int:
    count = 0
    for e in _monomials_of_degree(n, s):
        if not any(all(a <= b for a, b in zip(m, e)) for m in lms):
            count += 1
    return count


def _monomials_of_degree(n: int, s: int):
    if n == 0:
        if s == 0:
            yield ()
        return
    if n == 1:
        yield (s,)
        return
    for first in range(s, -1, -1):
        for rest in _monomials_of_degree(n - 1, s - first):
            yield (first,) + rest


def hilbert(I: Ideal, check: bool = True) -> HilbertData:
    """Hilbert data of a homogeneous ideal from its grevlex leading-term ideal."""
    if not I.homogeneous:
        raise NotHomogeneous("Hilbert data needs a homogeneous ideal")
    n = I.ring.nvars
    lms = I.leading_monomials(GREVLEX)
    num = series_numerator(lms)
    h = list(num)
    D = n
    while D > 0:
        q = _divide_one_minus_t(h)
        if q is None:
            break
        h = q
        D -= 1
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    if h == [0]:
        # unit ideal: empty scheme
        return HilbertData(num, [0], 0, [], 0, 0, (0, -1), n, lms)
    degree = sum(h)
    if D == 0:
        poly = [Fraction(0)]
        poly_coeffs = []
    else:
        poly = [Fraction(0)] * D
        for i, hi in enumerate(h):
            b = _binom_poly(D - 1 - i, D - 1)
            for k, c in enumerate(b):
                poly[k] += hi * c
        poly_coeffs = poly
    while poly_coeffs and poly_coeffs[-1] == 0:
        poly_coeffs.pop()
    maxgen = max((sum(m) for m in lms), default=0)
    reg = max(maxgen + n, len(h) - 1 - D + 1, 0)
    data = HilbertData(num, h, D, poly_coeffs, degree, reg, (0, -1), n, lms)
    if check:
        _check(data)
    return data


def _check(data: HilbertData) -> None:
    D = data.dimension
    if D >= 1:
        lead = data.polynomial[-1] if data.polynomial else Fraction(0)
        if lead != Fraction(data.degree, factorial(D - 1)):
            raise ValidationError("Hilbert polynomial leading coefficient does not match degree")
        if len(data.polynomial) != D:
            raise ValidationError("Hilbert polynomial has the wrong degree")
    lo, hi = data.regularity, data.regularity + 3
    for s in range(lo, hi + 1):
        hf = data.hilbert_function(s)
        expected = eval_poly(data.polynomial, s) if data.polynomial else 0
        if hf != expected:
            raise ValidationError(f"Hilbert function and polynomial disagree at {s}")
    data.checked_range = (lo, hi)


def hilbert_function_by_rank(I: Ideal, s: int) -> int:
    """Independent check: codimension of the span of degree-s multiples of the generators."""
    from .linalg import rank

    n = I.ring.nvars
    monos = list(_monomials_of_degree(n, s))
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in I.gens:
        d = g.total_degree()
        if d > s:
            continue
        for m in _monomials_of_degree(n, s - d):
            row = [I.ring.field.zero] * len(monos)
            for e, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] = c
            rows.append(row)
    r = rank(rows, I.ring.field.characteristic) if rows else 0
    return len(monos) - r


def hypersurface_polynomial(n: int, d: int):
    """binom(t+n, n) - binom(t+n-d, n) as coefficients (low first)."""
    a = _binom_poly(n, n)
    b = _binom_poly(n - d, n)
    out = [x - y for x, y in zip(a, b)]
    while out and out[-1] == 0:
        out.pop()
    return out
