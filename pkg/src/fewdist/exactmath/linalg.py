"""Exact dense linear algebra: Bareiss rank/determinant, charpoly, PSD test."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from .algebraic import sign as exact_sign

Matrix = list  # list of rows


def _integer_rows(m: Sequence[Sequence]) -> list:
    """Scale each row by its denominator lcm; rank is unchanged."""
    out = []
    for row in m:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def bareiss_rank(m: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free elimination with full pivoting."""
    a = _integer_rows(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    prev = 1
    rank = 0
    for k in range(min(rows, cols)):
        # full pivoting: smallest nonzero entry in the trailing block
        piv = None
        for i in range(k, rows):
            for j in range(k, cols):
                v = a[i][j]
                if v and (piv is None or abs(v) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[k], a[i] = a[i], a[k]
        if j != k:
            for row in a:
                row[k], row[j] = row[j], row[k]
        p = a[k][k]
        for i in range(k + 1, rows):
            aik = a[i][k]
            ri = a[i]
            rk = a[k]
            for j in range(k + 1, cols):
                ri[j] = (p * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = p
        rank += 1
    return rank


def bareiss_det(m: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix (fraction-free Bareiss)."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(x) for x in row] for row in m]
    a = _integer_rows(rows)
    # _integer_rows scales row i by the lcm of its denominators
    scale = 1
    for row in rows:
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        scale *= d
    prev = 1
    sgn = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sgn = -sgn
                    break
            else:
                return Fraction(0)
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (p * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = p
    return Fraction(sgn * a[n - 1][n - 1], scale)


def rank_over_field(m: Sequence[Sequence]) -> int:
    """Rank by Gaussian elimination over any exact field (Fraction, FieldElement)."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    for j in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][j] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][j] if not hasattr(a[rank][j], "inverse") else a[rank][j].inverse()
        for i in range(rank + 1, rows):
            if a[i][j] != 0:
                f = a[i][j] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def rank(m: Sequence[Sequence]) -> int:
    """Exact rank, dispatching to Bareiss for rational input."""
    if all(isinstance(x, (int, Fraction)) for row in m for x in row):
        return bareiss_rank(m)
    return rank_over_field(m)


def charpoly(m: Sequence[Sequence]) -> list:
    """Coefficients of det(lambda*I - m), highest degree first (leading 1).

    Hessenberg reduction followed by the standard recurrence; works over any
    exact field whose elements support ``+ - * /`` and comparison with 0.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    h = [[x if not isinstance(x, int) else Fraction(x) for x in row] for row in m]

    def div(a, b):
        return a * (b.inverse() if hasattr(b, "inverse") else 1 / b)

    # reduce to upper Hessenberg form by similarity transforms
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j] != 0), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        for i in range(j + 2, n):
            if h[i][j] != 0:
                u = div(h[i][j], h[j + 1][j])
                h[i] = [x - u * y for x, y in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] = row[j + 1] + u * row[i]
    # p_k(lambda) = char poly of leading k x k block; coefficients low to high
    polys = [[Fraction(1)]]
    for k in range(1, n + 1):
        hk = h[k - 1][k - 1]
        prev = polys[k - 1]
        # lambda * p_{k-1} - h_kk * p_{k-1}
        cur = [0] + list(prev)
        for i, c in enumerate(prev):
            cur[i] = cur[i] - hk * c
        t = 1
        for i in range(1, k):
            t = t * h[k - i][k - i - 1]
            coef = t * h[k - i - 1][k - 1]
            if coef != 0:
                q = polys[k - i - 1]
                for idx, c in enumerate(q):
                    cur[idx] = cur[idx] - coef * c
        polys.append(cur)
    return list(reversed(polys[n]))


def psd_from_charpoly(coeffs: Sequence, sign: Callable = exact_sign) -> bool:
    """PSD test for a real symmetric matrix from det(lambda*I - m).

    ``coeffs`` are highest degree first.  All roots are real, so they are all
    nonnegative iff the coefficients weakly alternate in sign.
    """
    for j, c in enumerate(coeffs):
        s = sign(c)
        if s and (s > 0) != (j % 2 == 0):
            return False
    return True


def principal_minors_nonnegative(m: Sequence[Sequence]) -> bool:
    """Brute-force PSD oracle: every principal minor is >= 0."""
    from itertools import combinations

    n = len(m)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            sub = [[m[i][j] for j in idx] for i in idx]
            if bareiss_det(sub) < 0:
                return False
    return True


def mat_mul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]
