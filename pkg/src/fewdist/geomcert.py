"""Certification of concretized candidate matrices as Euclidean point sets.

Spherical mode: ``G`` with unit diagonal realizes unit vectors iff it is
positive semidefinite, has rank at most d, and every off-diagonal entry is
below 1.  General mode: with the last point as basepoint and color values
read as squared distances, the matrix
``C_ij = D_in + D_jn - D_ij`` (so ``C_ii = 2 D_in``) realizes a point set iff
it is PSD of rank at most d, ``C_ii > 0`` and ``C_ij < (C_ii + C_jj) / 2``.

Every verdict is exact: entries are rationals or elements of one number
field, and signs go through :func:`fewdist.exactmath.algebraic.sign`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactmath.algebraic import FieldElement, poly_str
from .exactmath.algebraic import sign as exact_sign
from .exactmath.linalg import charpoly, psd_from_charpoly, rank
from .gramgen import CandidateGramMatrix

SPHERICAL = "spherical"
GENERAL = "general"
MODES = (SPHERICAL, GENERAL)


class NotPSDError(ArithmeticError):
    """A pivot of the reconstruction had the wrong sign."""


def _check_mode(mode: str):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def gram_values(g: CandidateGramMatrix, values: Sequence) -> list:
    """``G(alpha)``: unit diagonal, color c replaced by ``values[c]``."""
    m = g.rows()
    one = Fraction(1)
    return [[one if c < 0 else values[c] for c in row] for row in m]


def centered_values(g: CandidateGramMatrix, values: Sequence) -> list:
    """The (n-1)x(n-1) matrix C built on the last vertex as basepoint."""
    n = g.n
    m = g.rows()
    b = n - 1
    out = []
    for i in range(b):
        row = []
        for j in range(b):
            if i == j:
                row.append(2 * values[m[i][b]])
            else:
                row.append(values[m[i][b]] + values[m[j][b]] - values[m[i][j]])
        out.append(row)
    return out


def concrete_matrix(g: CandidateGramMatrix, values: Sequence, mode: str) -> list:
    _check_mode(mode)
    return gram_values(g, values) if mode == SPHERICAL else centered_values(g, values)


# ---------------------------------------------------------------------------
# reconstruction


@dataclass
class Reconstruction:
    """Exact factorization ``m = V^T V`` with ``V = diag(sqrt(weights)) * rows``.

    ``rows`` is rank x n over the entry field, ``weights`` are the positive
    pivots.  The coordinates of point j are ``sqrt(weights[k]) * rows[k][j]``;
    only the square roots are irrational, so everything stays exact.
    """

    weights: list
    rows: list
    size: int

    @property
    def rank(self) -> int:
        return len(self.weights)

    def gram(self) -> list:
        n = self.size
        return [
            [sum((w * r[i] * r[j] for w, r in zip(self.weights, self.rows)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]

    def points(self) -> "DistanceSet":
        n = self.size
        pts = [tuple(r[j] for r in self.rows) for j in range(n)]
        return DistanceSet(self.rank, pts, tuple(self.weights))

    def float_coordinates(self) -> list:
        """Columns of V as float tuples (display only; verdicts never use these)."""
        import math

        n = self.size
        return [tuple(math.sqrt(float(w)) * float(r[j]) for w, r in zip(self.weights, self.rows)) for j in range(n)]

    def enclosures(self, width=Fraction(1, 10**9)) -> list:
        """Rational intervals around every coordinate of V."""
        width = Fraction(width)
        out = []
        roots = [_sqrt_enclosure(w, width / 8) for w in self.weights]
        n = self.size
        for j in range(n):
            col = []
            for (slo, shi), r in zip(roots, self.rows):
                rlo, rhi = _enclose(r[j], width / 8)
                prods = (slo * rlo, slo * rhi, shi * rlo, shi * rhi)
                col.append((min(prods), max(prods)))
            out.append(col)
        return out


def _enclose(x, width):
    if isinstance(x, FieldElement):
        return x.enclosure(width)
    x = Fraction(x)
    return x, x


def _sqrt_enclosure(w, width):
    lo, hi = _enclose(w, width)
    a, b = Fraction(0), max(hi, Fraction(1))
    # bisection on [a, b] for sqrt over the enclosure of w
    while b - a > width:
        mid = (a + b) / 2
        if mid * mid <= lo:
            a = mid
        elif mid * mid >= hi:
            b = mid
        else:
            # straddles the enclosure: shrink both ends separately
            a2, b2 = a, mid
            while b2 - a2 > width / 2:
                m2 = (a2 + b2) / 2
                if m2 * m2 <= lo:
                    a2 = m2
                else:
                    b2 = m2
            a3, b3 = mid, b
            while b3 - a3 > width / 2:
                m3 = (a3 + b3) / 2
                if m3 * m3 >= hi:
                    b3 = m3
                else:
                    a3 = m3
            return a2, b3
    return a, b


def cholesky_reconstruct(m: Sequence[Sequence], expected_rank: int | None = None) -> Reconstruction:
    """Pivoted LDL^T of an exact PSD matrix, returned as ``V`` with ``V^T V = m``.

    At each step the largest remaining diagonal entry is the pivot (complete
    pivoting for symmetric matrices).  A negative pivot, or a zero pivot with
    a nonzero remainder, proves the input is not PSD and raises
    :class:`NotPSDError`.
    """
    n = len(m)
    a = [[x if not isinstance(x, int) else Fraction(x) for x in row] for row in m]
    remaining = list(range(n))
    weights = []
    rows = []
    while remaining:
        piv = max(remaining, key=lambda i: _Key(a[i][i]))
        p = a[piv][piv]
        sp = exact_sign(p)
        if sp < 0:
            raise NotPSDError(f"negative pivot at index {piv}")
        if sp == 0:
            for i in remaining:
                for j in remaining:
                    if a[i][j] != 0:
                        raise NotPSDError("zero diagonal with nonzero off-diagonal remainder")
            break
        inv = p.inverse() if isinstance(p, FieldElement) else 1 / p
        row = [Fraction(0)] * n
        for j in remaining:
            row[j] = a[piv][j] * inv
        weights.append(p)
        rows.append(row)
        remaining.remove(piv)
        for i in remaining:
            f = a[i][piv]
            if f != 0:
                for j in remaining:
                    a[i][j] = a[i][j] - f * row[j]
    if expected_rank is not None and len(weights) != expected_rank:
        raise NotPSDError(f"reconstruction rank {len(weights)} differs from certified rank {expected_rank}")
    return Reconstruction(weights, rows, n)


class _Key:
    """Sort key comparing exact values (rationals or same-field elements)."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return exact_sign(self.v - other.v) < 0


# ---------------------------------------------------------------------------
# distance sets


@dataclass
class DistanceSet:
    """Points in R^dim with exact coordinates.

    ``weights`` (default all 1) scale the squared coordinate differences, so
    ``|p - q|^2 = sum_k weights[k] * (p[k] - q[k])^2``; this represents
    coordinates of the form ``sqrt(w_k) * r`` without radicals.
    """

    dim: int
    points: list
    weights: tuple | None = None

    def squared_distance(self, i: int, j: int):
        p, q = self.points[i], self.points[j]
        w = self.weights or (1,) * len(p)
        return sum((wk * (a - b) * (a - b) for wk, a, b in zip(w, p, q)), Fraction(0))


def distance_spectrum(ds: DistanceSet) -> list:
    """Sorted distinct squared distances; duplicate points are an error."""
    if len(ds.points) < 2:
        raise ValueError("need at least two points")
    seen = []
    for i in range(len(ds.points)):
        for j in range(i):
            v = ds.squared_distance(i, j)
            if exact_sign(v) == 0:
                raise ValueError(f"points {j} and {i} coincide")
            if not any(v == w for w in seen):
                seen.append(v)
    seen.sort(key=_Key)
    return seen


# ---------------------------------------------------------------------------
# certificates


@dataclass
class EuclideanCertificate:
    mode: str
    n: int
    dim: int
    values: tuple
    rank: int
    psd: bool
    bounds_ok: bool
    distinct_distances: int
    charpoly: list = field(repr=False, default_factory=list)
    reconstruction: Reconstruction | None = field(repr=False, default=None)
    spectrum: list = field(default_factory=list)

    @property
    def realizable(self) -> bool:
        """True iff the assignment gives a point set in R^dim."""
        return self.psd and self.bounds_ok and self.rank <= self.dim

    def report(self, fmt: str = "text") -> str:
        data = {
            "mode": self.mode,
            "n": self.n,
            "d": self.dim,
            "values": [describe_value(v) for v in self.values],
            "rank": self.rank,
            "psd": self.psd,
            "bounds_ok": self.bounds_ok,
            "realizable": self.realizable,
            "distinct_distances": self.distinct_distances,
            "spectrum": [describe_value(v) for v in self.spectrum],
        }
        if fmt == "json":
            return json.dumps(data, sort_keys=False)
        lines = [f"{k}: {v}" for k, v in data.items() if not isinstance(v, list)]
        lines.insert(3, "values: " + "; ".join(data["values"]))
        lines.append("spectrum: " + "; ".join(data["spectrum"]))
        return "\n".join(lines)


def describe_value(v) -> str:
    """Stable text form: a rational, or min-poly with isolating interval."""
    if isinstance(v, FieldElement):
        if v.is_rational():
            return str(v.as_fraction())
        a = v.to_algebraic()
        return f"root of {poly_str(a.min_poly, 't')} in [{a.lo}, {a.hi}] (~{float(v):.12g})"
    return str(Fraction(v))


def _distinct(values) -> int:
    seen = []
    for v in values:
        if not any(v == w for w in seen):
            seen.append(v)
    return len(seen)


def _certify(g, values, d, mode, reconstruct):
    used = g.used_colors
    if len(values) < used:
        raise ValueError(f"{used} colors used but {len(values)} values given")
    values = tuple(values[:used])
    m = concrete_matrix(g, values, mode)
    r = rank(m) if m else 0
    cp = charpoly(m) if m else [Fraction(1)]
    psd = psd_from_charpoly(cp)
    if mode == SPHERICAL:
        bounds_ok = all(exact_sign(v - 1) < 0 for v in values)
    else:
        bounds_ok = all(exact_sign(m[i][i]) > 0 for i in range(len(m))) and all(
            exact_sign(m[i][j] - (m[i][i] + m[j][j]) / 2) < 0 for i in range(len(m)) for j in range(i)
        )
    rec = None
    spectrum = []
    if psd and reconstruct and m:
        rec = cholesky_reconstruct(m, r)
        if bounds_ok:
            pts = rec.points()
            if mode == GENERAL:
                pts.points.append(tuple(Fraction(0) for _ in range(rec.rank)))
                # C = 2 * Gram, so halve the recovered squared distances
                pts.weights = tuple(w / 2 for w in pts.weights)
            spectrum = distance_spectrum(pts)
    return EuclideanCertificate(
        mode=mode,
        n=g.n,
        dim=d,
        values=values,
        rank=r,
        psd=psd,
        bounds_ok=bounds_ok,
        distinct_distances=_distinct(values),
        charpoly=cp,
        reconstruction=rec,
        spectrum=spectrum,
    )


def certify_spherical(g: CandidateGramMatrix, values: Sequence, d: int, reconstruct: bool = True) -> EuclideanCertificate:
    """Check PSD, rank <= d and off-diagonal entries < 1 for ``G(values)``."""
    return _certify(g, values, d, SPHERICAL, reconstruct)


def certify_general(g: CandidateGramMatrix, values: Sequence, d: int, reconstruct: bool = True) -> EuclideanCertificate:
    """Check the basepoint-centered matrix for PSD, rank and the strict bounds."""
    return _certify(g, values, d, GENERAL, reconstruct)


def certify(g: CandidateGramMatrix, values: Sequence, d: int, mode: str, reconstruct: bool = True):
    _check_mode(mode)
    return _certify(g, values, d, mode, reconstruct)
