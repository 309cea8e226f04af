"""Lower-bound constructions for few-distance sets.

Cube-distance cliques: fix the admissible squared distances ``{2, 4, ..., 2s}``
and the d standard basis vectors (pairwise at squared distance 2).  For each
target vector ``w`` of squared distances to the basis vectors there are at
most two points realizing it; points whose mutual squared distance is
admissible are joined in the compatibility graph, and a clique of size k
yields a (<= s)-distance set of d + k points.

A point realizing ``w`` has ``v_j = v_1 + (W_1 - W_j) / 2`` (``W = w^2``) and
``v_1`` solves ``d v_1^2 + 2 (A - 1) v_1 + B - W_1 + 1 = 0`` with
``A = sum a_j``, ``B = sum a_j^2``, ``a_j = (W_1 - W_j) / 2``.  Its coordinates
are ``(P_j + R sqrt(m)) / d`` with integers P_j, R and squarefree m, so the
scaled squared distances are exact integer combinations of square roots.

Truncated simplices: permutation orbits of ``(1, 1, -1, 0, ..., 0)`` and of
``(1, 1, 1, -1, 0, ..., 0)`` (plus the origin) in ``R^{d+1}``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy import factorint

from .exactmath.linalg import rank
from .geomcert import DistanceSet, distance_spectrum


class GraphTooLarge(ValueError):
    """The compatibility graph could exceed the configured vertex limit."""


class UnsupportedPattern(ValueError):
    """Only the two truncated-simplex orbits are implemented."""


# ---------------------------------------------------------------------------
# sums of square roots


def squarefree_split(n: int) -> tuple:
    """``n = k^2 * m`` with m squarefree; returns ``(k, m)`` (n > 0)."""
    if n <= 0:
        raise ValueError("need a positive integer")
    k = m = 1
    for p, e in factorint(n).items():
        k *= p ** (e // 2)
        if e % 2:
            m *= p
    return k, m


class SqrtSum:
    """Exact element of ``Q(sqrt 2, sqrt 3, ...)``: ``sum c_m sqrt(m)``, m squarefree.

    Square roots of distinct squarefree integers are linearly independent
    over Q, so the representation is unique and equality is term-wise.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {1: Fraction(terms)}
        self.terms = {m: Fraction(c) for m, c in terms.items() if c}

    @classmethod
    def sqrt(cls, n, coef=1) -> "SqrtSum":
        """``coef * sqrt(n)`` for a nonnegative rational n."""
        n = Fraction(n)
        if n == 0:
            return cls()
        if n < 0:
            raise ValueError("square root of a negative number")
        # sqrt(p/q) = sqrt(p q) / q
        k, m = squarefree_split(n.numerator * n.denominator)
        return cls({m: Fraction(coef) * k / n.denominator})

    @staticmethod
    def _lift(x) -> "SqrtSum":
        return x if isinstance(x, SqrtSum) else SqrtSum(x)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SqrtSum(out)

    __radd__ = __add__

    def __neg__(self):
        return SqrtSum({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                g = math.gcd(m1, m2)
                m = (m1 // g) * (m2 // g)
                out[m] = out.get(m, 0) + c1 * c2 * g
        return SqrtSum(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SqrtSum):
            if not other.is_rational():
                raise ZeroDivisionError("division by an irrational sum is not supported")
            other = other.as_fraction()
        return SqrtSum({m: c / Fraction(other) for m, c in self.terms.items()})

    def is_rational(self) -> bool:
        return all(m == 1 for m in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms.get(1, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, SqrtSum)):
            return not (self - other).terms
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_fraction())
        return hash(frozenset(self.terms.items()))

    def enclosure(self, bits: int) -> tuple:
        """Rational bounds ``lo <= self <= hi`` from integer square roots."""
        scale = 1 << bits
        lo = hi = Fraction(0)
        for m, c in self.terms.items():
            r = math.isqrt(m * scale * scale)
            a, b = Fraction(r, scale), Fraction(r + (0 if r * r == m * scale * scale else 1), scale)
            if c > 0:
                lo, hi = lo + c * a, hi + c * b
            else:
                lo, hi = lo + c * b, hi + c * a
        return lo, hi

    def sign(self) -> int:
        if not self.terms:
            return 0
        bits = 32
        while True:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(sum(float(c) * math.sqrt(m) for m, c in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            parts.append(str(c) if m == 1 else f"{c}*sqrt({m})")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# cube-distance construction


@dataclass(frozen=True)
class FishPoint:
    """``(P + R sqrt(m) * ones) / d`` realizing the squared distances ``target``."""

    target: tuple
    scaled: tuple
    radical: int
    radicand: int
    d: int

    def coordinates(self) -> tuple:
        root = SqrtSum.sqrt(self.radicand, Fraction(self.radical, self.d))
        return tuple(SqrtSum(Fraction(p, self.d)) + root for p in self.scaled)


def solve_fish(w_squared: Sequence[int], d: int | None = None) -> list:
    """Points v with ``|v - B_i|^2 = w_squared[i]`` for the d basis vectors B_i.

    Returns zero, one or two :class:`FishPoint` values (one for a double root).
    """
    w = [int(x) for x in w_squared]
    if d is None:
        d = len(w)
    if len(w) != d or d < 1:
        raise ValueError("need one squared distance per coordinate")
    if any(x % 2 for x in w):
        raise ValueError("squared distances must be even integers")
    a = [(w[0] - x) // 2 for x in w]
    big_a, big_b = sum(a), sum(x * x for x in a)
    # d v1^2 + 2 (A - 1) v1 + (B - W1 + 1) = 0
    disc = (big_a - 1) ** 2 - d * (big_b - w[0] + 1)
    if disc < 0:
        return []
    base = [d * x - (big_a - 1) for x in a]
    if disc == 0:
        return [FishPoint(tuple(w), tuple(base), 0, 1, d)]
    k, m = squarefree_split(disc)
    if m == 1:
        return [FishPoint(tuple(w), tuple(p + sgn * k for p in base), 0, 1, d) for sgn in (-1, 1)]
    return [FishPoint(tuple(w), tuple(base), sgn * k, m, d) for sgn in (-1, 1)]


def _scaled_sq_distance(x: FishPoint, y: FishPoint) -> dict:
    """``d^2 |x - y|^2`` as ``{squarefree m: integer coefficient}``."""
    d = x.d
    dp = [p - q for p, q in zip(x.scaled, y.scaled)]
    s = sum(dp)
    out: dict = {1: sum(t * t for t in dp)}

    def add(m, c):
        if c:
            out[m] = out.get(m, 0) + c

    # (R1 sqrt m1 - R2 sqrt m2) contributes per coordinate
    r1, m1, r2, m2 = x.radical, x.radicand, y.radical, y.radicand
    add(m1, 2 * s * r1)
    add(m2, -2 * s * r2)
    add(1, d * (r1 * r1 * m1 + r2 * r2 * m2))
    if r1 and r2:
        g = math.gcd(m1, m2)
        add((m1 // g) * (m2 // g), -2 * d * r1 * r2 * g)
    return {m: c for m, c in out.items() if c}


@dataclass
class CompatibilityGraph:
    d: int
    s: int
    vertices: list
    adjacency: list = field(repr=False)

    @property
    def admissible(self) -> tuple:
        return tuple(2 * i for i in range(1, self.s + 1))

    def __len__(self):
        return len(self.vertices)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def edge_count(self) -> int:
        return sum(bin(a).count("1") for a in self.adjacency) // 2


DEFAULT_VERTEX_LIMIT = 20_000


def build_compat_graph(d: int, s: int, vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> CompatibilityGraph:
    """Compatibility graph on all solution points for all targets in ``{2..2s}^d``."""
    if d < 1 or s < 2:
        raise ValueError("need d >= 1 and s >= 2")
    if 2 * s**d > vertex_limit:
        raise GraphTooLarge(f"up to 2*s^d = {2 * s**d} vertices exceeds the limit {vertex_limit}")
    values = [2 * i for i in range(1, s + 1)]
    verts = []
    for w in itertools.product(values, repeat=d):
        verts.extend(solve_fish(w, d))
    scale = d * d
    admissible = {v * scale for v in values}
    adj = [0] * len(verts)
    for i in range(len(verts)):
        for j in range(i):
            dist = _scaled_sq_distance(verts[i], verts[j])
            if len(dist) == 1 and dist.get(1) in admissible:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return CompatibilityGraph(d, s, verts, adj)


# ---------------------------------------------------------------------------
# maximum clique


@dataclass
class Clique:
    vertices: list
    optimal: bool
    nodes: int = 0

    @property
    def size(self) -> int:
        return len(self.vertices)


def max_clique(adjacency: Sequence[int], lower_bound: int = 0, node_budget: int | None = None) -> Clique:
    """Maximum clique by branch and bound with a greedy coloring bound.

    ``adjacency`` holds one neighbour bitset per vertex.  Vertices are
    renumbered by non-increasing degree (ties by index), so the result is
    deterministic.  Only cliques larger than ``lower_bound - 1`` are sought.
    ``optimal`` is False if ``node_budget`` search nodes were exhausted.
    """
    n = len(adjacency)
    if n == 0:
        raise ValueError("graph is empty")
    order = sorted(range(n), key=lambda v: (-bin(adjacency[v]).count("1"), v))
    pos = {v: i for i, v in enumerate(order)}
    adj = [0] * n
    for i, v in enumerate(order):
        bits = adjacency[v]
        row = 0
        while bits:
            low = bits & -bits
            row |= 1 << pos[low.bit_length() - 1]
            bits ^= low
        adj[i] = row
    best: list = []
    best_size = max(lower_bound - 1, 0)
    nodes = 0
    stopped = False

    def color_sort(p_bits, need):
        # greedy sequential coloring; vertices whose color cannot beat the
        # incumbent are left out of the branching list
        out_v, out_c = [], []
        uncolored = p_bits
        k = 0
        while uncolored:
            k += 1
            q = uncolored
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v] & ~low
                uncolored &= ~low
                if k >= need:
                    out_v.append(v)
                    out_c.append(k)
        return out_v, out_c

    def expand(clique, p_bits):
        nonlocal best, best_size, nodes, stopped
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            stopped = True
            return
        verts, colors = color_sort(p_bits, best_size - len(clique) + 1)
        for i in range(len(verts) - 1, -1, -1):
            if len(clique) + colors[i] <= best_size:
                return
            v = verts[i]
            clique.append(v)
            new_p = p_bits & adj[v]
            if new_p:
                expand(clique, new_p)
            elif len(clique) > best_size:
                best, best_size = list(clique), len(clique)
            clique.pop()
            if stopped:
                return
            p_bits &= ~(1 << v)

    expand([], (1 << n) - 1)
    if not best and lower_bound <= 1:
        best = [0]
    return Clique(sorted(order[v] for v in best), not stopped, nodes)


def brute_force_clique_number(adjacency: Sequence[int]) -> int:
    """Clique number by exhaustive search (test oracle for small graphs)."""
    n = len(adjacency)
    best = 0

    def rec(size, cand):
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            rec(size + 1, cand & adjacency[v])

    rec(0, (1 << n) - 1)
    return best


@dataclass
class CubeConstruction:
    graph: CompatibilityGraph
    clique: Clique
    points: DistanceSet
    spectrum: list

    @property
    def size(self) -> int:
        return len(self.points.points)


def construct_cube_set(d: int, s: int, node_budget: int | None = None, lower_bound: int = 0) -> CubeConstruction:
    """Basis vectors plus a maximum clique of the compatibility graph."""
    g = build_compat_graph(d, s)
    cl = max_clique(g.adjacency, lower_bound, node_budget)
    pts = [tuple(SqrtSum(1 if i == j else 0) for j in range(d)) for i in range(d)]
    pts += [g.vertices[v].coordinates() for v in cl.vertices]
    ds = DistanceSet(d, pts)
    return CubeConstruction(g, cl, ds, distance_spectrum(ds))


# ---------------------------------------------------------------------------
# truncated simplices

SIMPLEX_PATTERNS = {
    "2-2": ((1, 1, -1), False, 4, 5),
    "3-1": ((1, 1, 1, -1), True, 5, 6),
}


@dataclass
class SimplexOrbit:
    pattern: str
    d: int
    points: DistanceSet
    spectrum: list
    affine_dimension: int

    @property
    def size(self) -> int:
        return len(self.points.points)


def affine_dimension(points: Sequence[Sequence]) -> int:
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def simplex_orbit(d: int, pattern: str) -> SimplexOrbit:
    """Permutation orbit of a signed pattern padded with zeros to length d+1.

    ``"2-2"`` is the orbit of ``(1, 1, -1, 0, ...)`` (d >= 4); ``"3-1"`` is
    the orbit of ``(1, 1, 1, -1, 0, ...)`` together with the origin (d >= 5).
    The orbit lies on a hyperplane ``sum(x) = const``; coordinates are
    translated by the orbit centroid so that it lies in the plane
    perpendicular to the all-ones vector.  Translation keeps all distances.
    """
    if pattern not in SIMPLEX_PATTERNS:
        raise UnsupportedPattern(f"pattern must be one of {sorted(SIMPLEX_PATTERNS)}")
    head, with_origin, min_d, _ = SIMPLEX_PATTERNS[pattern]
    if d < min_d:
        raise ValueError(f"pattern {pattern} needs d >= {min_d}")
    base = head + (0,) * (d + 1 - len(head))
    orbit = sorted(set(itertools.permutations(base)))
    pts = [tuple(Fraction(x) for x in p) for p in orbit]
    if with_origin:
        pts.append(tuple(Fraction(0) for _ in range(d + 1)))
    shift = Fraction(sum(head), d + 1)
    pts = [tuple(x - shift for x in p) for p in pts]
    ds = DistanceSet(d + 1, pts)
    return SimplexOrbit(pattern, d, ds, distance_spectrum(ds), affine_dimension(pts))


def simplex_orbit_size(d: int, pattern: str) -> int:
    """Closed-form cardinality of :func:`simplex_orbit`."""
    if pattern == "2-2":
        return (d - 1) * math.comb(d + 1, 2)
    if pattern == "3-1":
        return 1 + (d - 2) * math.comb(d + 1, 3)
    raise UnsupportedPattern(pattern)
