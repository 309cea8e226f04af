"""Dense univariate polynomials over Q as coefficient lists (low degree first)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

UPoly = list  # list[Fraction], index = degree


def trim(p: Sequence) -> UPoly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def add(p, q) -> UPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q) -> UPoly:
    return add(p, [-c for c in q])


def mul(p, q) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p, c) -> UPoly:
    return trim([a * c for a in p])


def divmod_(p, q):
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lq = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 1)
    while len(r) - 1 >= dq and r:
        k = len(r) - 1 - dq
        c = r[-1] / lq
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = trim(r)
    return trim(quot), r


def rem(p, q) -> UPoly:
    return divmod_(p, q)[1]


def monic(p) -> UPoly:
    p = trim(p)
    if not p:
        return p
    return [c / p[-1] for c in p]


def gcd(p, q) -> UPoly:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def derivative(p) -> UPoly:
    return trim([k * c for k, c in enumerate(p)][1:])


def squarefree_part(p) -> UPoly:
    p = trim(p)
    if len(p) <= 2:
        return monic(p)
    g = gcd(p, derivative(p))
    return monic(divmod_(p, g)[0])


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_mod(p, g, m) -> UPoly:
    """p(g(t)) reduced modulo m(t)."""
    acc: UPoly = []
    for c in reversed(trim(p)):
        acc = rem(add(mul(acc, g), [c]), m)
    return acc


def sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p) -> list:
    p = trim(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        seq.append([-c for c in r])
    seq.pop()
    return seq


def sign_changes_at(seq, x) -> int:
    signs = [sign(evaluate(q, x)) for q in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p, lo, hi, seq=None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    if seq is None:
        seq = sturm_sequence(p)
    return sign_changes_at(seq, lo) - sign_changes_at(seq, hi)


def root_bound(p) -> Fraction:
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p) -> list:
    """Disjoint isolating intervals ``(lo, hi)`` of the distinct real roots, ascending.

    A rational root found exactly at a bisection point is returned as ``(r, r)``.
    """
    p = squarefree_part(p)
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    b = root_bound(p)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        k = count_roots(p, lo, hi, seq)
        if k == 0:
            continue
        if k == 1:
            if evaluate(p, hi) == 0:
                out.append((hi, hi))
                continue
            # lo may itself be a neighbouring root counted elsewhere
            while evaluate(p, lo) == 0:
                mid = (lo + hi) / 2
                if count_roots(p, lo, mid, seq):
                    hi = mid
                else:
                    lo = mid
            out.append((hi, hi) if evaluate(p, hi) == 0 else (lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out
