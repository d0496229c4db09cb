"""Exact integer and rational linear algebra.

Everything in this module works on tuples of Python ints (arbitrary
precision) or Fractions; no floating point anywhere.  All functions are pure
and deterministic, so results are bit-identical across runs and safe to call
from any number of threads.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm

from .errors import DependentInput, DimensionMismatch, NullityTooLarge, ZeroVector

Vec = tuple[int, ...]


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def vec_sub(a, b) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a) -> Vec:
    return tuple(-x for x in a)


def _common_dim(vs) -> int:
    dims = {len(v) for v in vs}
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed dimensions {sorted(dims)}")
    return dims.pop() if dims else 0


def primitive(v) -> Vec:
    """v divided by the gcd of its entries; same direction, entry gcd 1."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("the zero vector has no primitive generator")
    if g == 1:
        return tuple(v)
    return tuple(x // g for x in v)


def is_primitive(v) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def _echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Integer row echelon form by cross-multiplication.

    Rows are gcd-reduced after each elimination to tame coefficient growth.
    Returns the echelon rows and the list of pivot columns.
    """
    if not rows:
        return rows, []
    n = len(rows[0])
    piv_cols: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        head = rows[r][c]
        for i in range(r + 1, len(rows)):
            t = rows[i][c]
            if t == 0:
                continue
            new = [head * rows[i][j] - t * rows[r][j] for j in range(n)]
            g = 0
            for x in new:
                g = gcd(g, x)
            rows[i] = [x // g for x in new] if g > 1 else new
        piv_cols.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, piv_cols


def rank(vs) -> int:
    """Exact rank over the rationals of a collection of integer vectors."""
    vs = list(vs)
    if not vs:
        return 0
    _common_dim(vs)
    _, piv = _echelon([list(v) for v in vs])
    return len(piv)


def _integerize(xs: list[Fraction]) -> Vec:
    den = 1
    for x in xs:
        den = lcm(den, x.denominator)
    return primitive([int(x * den) for x in xs])


def nullspace_basis(rows, n: int) -> list[Vec]:
    """Primitive integer basis of {x : row . x = 0 for every row}.

    The basis spans the rational null space; one vector per free column, in
    column order, so the output is deterministic.
    """
    ech, piv = _echelon([list(r) for r in rows]) if rows else ([], [])
    basis: list[Vec] = []
    for f in (c for c in range(n) if c not in piv):
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for k in range(len(piv) - 1, -1, -1):
            c = piv[k]
            row = ech[k]
            s = sum((Fraction(row[j]) * x[j] for j in range(c + 1, n)), Fraction(0))
            x[c] = -s / row[c]
        basis.append(_integerize(x))
    return basis


def kernel_relation(vs) -> Vec | None:
    """The unique integer dependency r with sum(r_i * v_i) = 0, or None.

    Requires nullity 0 or 1.  The result has entry gcd 1; the sign is fixed
    deterministically (first nonzero coefficient positive), callers impose
    their own geometric sign convention on top.
    """
    vs = [tuple(v) for v in vs]
    if not vs:
        return None
    d = _common_dim(vs)
    n = len(vs)
    rows = [[v[i] for v in vs] for i in range(d)]
    basis = nullspace_basis(rows, n)
    if not basis:
        return None
    if len(basis) > 1:
        raise NullityTooLarge(f"nullity {len(basis)} >= 2")
    rel = basis[0]
    first = next(x for x in rel if x != 0)
    if first < 0:
        rel = vec_neg(rel)
    assert all(sum(r * v[i] for r, v in zip(rel, vs)) == 0 for i in range(d))
    return rel


def det(mat) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def maximal_minor_gcd(vs) -> int:
    """gcd of the absolute values of all k x k minors of the k x d matrix.

    The input vectors must be linearly independent (k <= d).
    """
    vs = [tuple(v) for v in vs]
    k = len(vs)
    if k == 0:
        return 1
    d = _common_dim(vs)
    if k > d or rank(vs) < k:
        raise DependentInput("maximal_minor_gcd needs independent vectors")
    g = 0
    for cols in itertools.combinations(range(d), k):
        sub = [[v[c] for c in cols] for v in vs]
        g = gcd(g, abs(det(sub)))
        if g == 1:
            return 1
    return g


def solve_in_span(vectors, target) -> tuple[Fraction, ...] | None:
    """Coefficients writing target in the given independent vectors, or None.

    None means target is outside the rational span.  Entries of target may be
    ints or Fractions.
    """
    vectors = [tuple(v) for v in vectors]
    k = len(vectors)
    target = tuple(target)
    if k == 0:
        return () if all(x == 0 for x in target) else None
    d = _common_dim(vectors)
    if len(target) != d:
        raise DimensionMismatch(f"target dim {len(target)} != vector dim {d}")
    aug = [
        [Fraction(vectors[j][i]) for j in range(k)] + [Fraction(target[i])]
        for i in range(d)
    ]
    r = 0
    for c in range(k):
        p = next((i for i in range(r, d) if aug[i][c] != 0), None)
        if p is None:
            raise DependentInput("solve_in_span needs independent vectors")
        aug[r], aug[p] = aug[p], aug[r]
        for i in range(r + 1, d):
            if aug[i][c] != 0:
                f = aug[i][c] / aug[r][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        r += 1
    for i in range(r, d):
        if aug[i][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for i in range(k - 1, -1, -1):
        s = aug[i][k] - sum(aug[i][j] * sol[j] for j in range(i + 1, k))
        sol[i] = s / aug[i][i]
    return tuple(sol)


def nonneg_combination(rays, p) -> tuple[Fraction, ...] | None:
    """The unique nonnegative coefficients with p = sum(lambda_i * ray_i), or None.

    Rays must be linearly independent.  None when p is outside the span or
    some coefficient is negative.
    """
    coeffs = solve_in_span(rays, p)
    if coeffs is None or any(c < 0 for c in coeffs):
        return None
    return coeffs
