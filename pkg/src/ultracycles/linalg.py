"""Exact dense linear algebra over Q (``mpq``) or GF(p) (ints)."""

from __future__ import annotations

from gmpy2 import mpq


def _ops(p: int):
    if p:
        def norm(c):
            return c % p

        def inv(c):
            return pow(c, -1, p)
    else:
        def norm(c):
            return c

        def inv(c):
            return mpq(1) / c
    return norm, inv


def rref(rows, p: int = 0):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    norm, inv = _ops(p)
    m = [[norm(c) for c in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        iv = inv(m[r][col])
        m[r] = [norm(c * iv) for c in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                row_r = m[r]
                m[i] = [norm(a - f * b) for a, b in zip(m[i], row_r)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, p: int = 0) -> int:
    return len(rref(rows, p)[1])


def nullspace(rows, ncols: int, p: int = 0):
    """Basis of ``{v : rows * v = 0}``."""
    norm, _ = _ops(p)
    if not rows:
        one = 1 if p else mpq(1)
        zero = 0 if p else mpq(0)
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    one = 1 if p else mpq(1)
    zero = 0 if p else mpq(0)
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(red, pivots):
            v[pc] = norm(-row[fc])
        basis.append(v)
    return basis


def matmul(a, b, p: int = 0):
    norm, _ = _ops(p)
    bt = list(zip(*b))
    return [[norm(sum(x * y for x, y in zip(row, col))) for col in bt] for row in a]


def matvec(a, v, p: int = 0):
    norm, _ = _ops(p)
    return [norm(sum(x * y for x, y in zip(row, v))) for row in a]


def vector_minimal_polynomial(mat, v, p: int = 0):
    """Monic minimal polynomial (low degree first) of ``v`` under ``mat``."""
    norm, inv = _ops(p)
    one = 1 if p else mpq(1)
    zero = 0 if p else mpq(0)
    rows = []  # (pivot, reduced vector, polynomial)
    raw = [norm(c) for c in v]
    k = 0
    while True:
        vec = list(raw)
        poly = [zero] * k + [one]
        for piv, b, bp in rows:
            c = vec[piv]
            if c:
                vec = [norm(a - c * x) for a, x in zip(vec, b)]
                poly = [norm(a - c * (bp[i] if i < len(bp) else zero)) for i, a in enumerate(poly)]
        lead = next((i for i, c in enumerate(vec) if c), None)
        if lead is None:
            return poly
        iv = inv(vec[lead])
        rows.append((lead, [norm(c * iv) for c in vec], [norm(c * iv) for c in poly]))
        raw = matvec(mat, raw, p)
        k += 1


def minimal_polynomial(mat, p: int = 0):
    """Minimal polynomial (monic, dense, low degree first) of a square matrix.

    Computed as the lcm of the minimal polynomials of standard basis vectors,
    skipping vectors already inside the sum of the Krylov spaces seen so far.
    """
    n = len(mat)
    norm, inv = _ops(p)
    one = 1 if p else mpq(1)
    zero = 0 if p else mpq(0)
    result = [one]
    span = []  # echelon rows (pivot, vector)

    def reduce(vec):
        for piv, b in span:
            c = vec[piv]
            if c:
                vec = [norm(a - c * x) for a, x in zip(vec, b)]
        return vec

    def add(vec):
        vec = reduce(vec)
        lead = next((i for i, c in enumerate(vec) if c), None)
        if lead is not None:
            iv = inv(vec[lead])
            span.append((lead, [norm(c * iv) for c in vec]))

    for j in range(n):
        if len(result) - 1 == n:
            break
        v = [zero] * n
        v[j] = one
        if not any(reduce(v)):
            continue
        mu = vector_minimal_polynomial(mat, v, p)
        result = _poly_lcm(result, mu, p)
        w = v
        for _ in range(len(mu) - 1):
            add(w)
            w = matvec(mat, w, p)
    return result


def _poly_lcm(a, b, p):
    from .factor import pdivmod, pgcd, pmul, qdivmod, qgcd, zmul

    if p:
        g = pgcd(a, b, p)
        return pdivmod(pmul(a, b, p), g, p)[0]
    g = qgcd(a, b)
    prod = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    q = qdivmod(prod, g)[0]
    lc = q[-1]
    return [c / lc for c in q]
