"""Determinantal rank conditions for candidate Gram matrices.

A candidate can have rank at most d at admissible complex parameter values
only if the ideal generated by its (d+1)x(d+1) minors, together with a
saturation polynomial ``1 + u*h`` that forbids the excluded values, is not
the unit ideal.  Feasibility is decided by a Groebner basis computation;
surviving terminal systems are solved exactly.

Spherical mode works with ``G`` itself in variables ``x_0..x_{s-1}, u``;
``h`` forbids the value 1 and coincident values.  General mode works with
the basepoint-centered matrix ``C`` with color 0 normalized to 1, in
variables ``x_1..x_{s-1}, u``; ``h`` forbids 0, 1 and coincident values.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .exactmath import univariate as up
from .exactmath.algebraic import AlgebraicNumber, FieldElement, NumberField, rational_factors
from .exactmath.groebner import DEFAULT_BUDGET, BudgetExhausted, GroebnerBudget, GroebnerEngine
from .exactmath.linalg import rank as exact_rank
from .exactmath.poly import GREVLEX, Poly
from .exactmath.saturation import LinearForm, saturate, saturation_is_trivial
from .geomcert import GENERAL, MODES, SPHERICAL, EuclideanCertificate, certify, concrete_matrix
from .gramgen import CandidateGramMatrix, format_line


class Verdict(str, enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


class NonIsolatedSolutions(ArithmeticError):
    """The solution set of a terminal system is positive-dimensional."""


# ---------------------------------------------------------------------------
# sparse integer polynomials used while expanding determinants


def _dp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _dp_addmul(acc: dict, a: dict, b: dict, sign: int) -> None:
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = acc.get(m, 0) + sign * ca * cb
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)


def _linear_factor_divide(p: dict, lin: dict):
    """Exact quotient ``p / lin`` for a linear form, or None if it does not divide.

    Division uses lex order with variable 0 largest; the leading term of
    ``lin`` is then a single variable ``x_a``.
    """
    lead = max(lin)
    a = lead.index(1)
    lc = lin[lead]
    rest = [(m, c) for m, c in lin.items() if m != lead]
    r = dict(p)
    q: dict = {}
    while r:
        m = max(r)
        c = r[m]
        if m[a] == 0:
            return None
        qm = m[:a] + (m[a] - 1,) + m[a + 1:]
        if c % lc:
            return None
        qc = c // lc
        q[qm] = qc
        del r[m]
        for mm, cc in rest:
            t = tuple(x + y for x, y in zip(qm, mm))
            v = r.get(t, 0) - qc * cc
            if v:
                r[t] = v
            else:
                r.pop(t, None)
    return q


def strip_factors(p: dict, factors: Sequence[dict]) -> dict:
    """Divide out every power of the given linear forms."""
    for lin in factors:
        while True:
            q = _linear_factor_divide(p, lin)
            if q is None:
                break
            p = q
    return p


class _MinorExpander:
    """Determinants of submatrices of a symbolic matrix, memoized by Laplace expansion."""

    def __init__(self, entries: list, nvars: int):
        self.entries = entries
        self.nvars = nvars
        self.memo: dict = {}

    def det(self, rows: tuple, cols: tuple) -> dict:
        if len(rows) == 1:
            return self.entries[rows[0]][cols[0]]
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        acc: dict = {}
        r0 = rows[0]
        rest = rows[1:]
        for k, c in enumerate(cols):
            a = self.entries[r0][c]
            if not a:
                continue
            sub = self.det(rest, cols[:k] + cols[k + 1:])
            if sub:
                _dp_addmul(acc, a, sub, -1 if k % 2 else 1)
        self.memo[key] = acc
        return acc


# ---------------------------------------------------------------------------
# systems


@dataclass
class MinorSystem:
    """Symbolic matrix, its minor size, and the saturation polynomial.

    Minors are produced lazily by :meth:`minors`; since the matrix is
    symmetric, the minor on rows R and columns S equals the one on S and R,
    so only pairs with R <= S are produced.
    """

    mode: str
    dim: int
    arity: int
    entries: list = field(repr=False)
    variables: tuple
    saturation_factor: Poly = field(repr=False)
    used_colors: int = 0
    forbidden: list = field(default_factory=list, repr=False)
    forms: list = field(default_factory=list, repr=False)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def u_index(self) -> int:
        return self.arity - 1

    def saturation(self) -> Poly:
        """``1 + u*h``."""
        u = Poly.var(self.u_index, self.arity)
        return 1 + u * self.saturation_factor

    def minor_index_pairs(self) -> Iterator[tuple]:
        """(rows, cols) with rows <= cols; principal minors first."""
        k = self.dim + 1
        subsets = list(itertools.combinations(range(self.size), k))
        for r in subsets:
            yield r, r
        for i, r in enumerate(subsets):
            for c in subsets[i + 1:]:
                yield r, c

    def minors(self, strip: bool = True) -> Iterator[Poly]:
        """Distinct nonzero minors (up to sign) as polynomials.

        With ``strip`` every linear factor of the saturation polynomial is
        divided out.  Off the hypersurface ``h = 0`` such factors are units,
        so the solutions that matter, and the triviality of the saturated
        ideal, are unchanged.
        """
        exp = _MinorExpander(self.entries, self.arity)
        seen = set()
        for r, c in self.minor_index_pairs():
            d = exp.det(r, c)
            if not d:
                continue
            if strip:
                d = strip_factors(d, self.forbidden)
                if len(d) == 1 and sum(next(iter(d))) == 0:
                    # a constant: no admissible point makes this minor vanish
                    yield Poly.const(1, self.arity)
                    return
            first = min(d)
            sig = frozenset(d.items()) if d[first] > 0 else frozenset((m, -v) for m, v in d.items())
            if sig in seen:
                continue
            seen.add(sig)
            yield Poly(d, self.arity)

    @property
    def generators(self) -> list:
        """All generators: every distinct minor plus the saturation polynomial."""
        return list(self.minors()) + [self.saturation()]


def _const(c, nvars):
    return {(0,) * nvars: c} if c else {}


def _var(i, nvars, c=1):
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): c}


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _check_order(g: CandidateGramMatrix, minimum: int, what: str):
    if g.n < minimum:
        raise ValueError(f"{what}: need n >= {minimum}, got n = {g.n}; the rank condition is vacuous")


def build_spherical_system(g: CandidateGramMatrix, d: int) -> MinorSystem:
    """Minors of ``G(x_0..x_{s-1})`` and ``1 + u*prod(x_i - 1)*prod(x_j - x_k)``."""
    _check_order(g, d + 1, "spherical system")
    if d < 1:
        raise ValueError("d must be positive")
    s = g.s
    nv = s + 1
    m = g.rows()
    entries = [[_const(1, nv) if c < 0 else _var(c, nv) for c in row] for row in m]
    used = g.used_colors
    xs = [Poly.var(i, nv) for i in range(used)]
    h = Poly.const(1, nv)
    for x in xs:
        h = h * (x - 1)
    for j, k in itertools.combinations(range(used), 2):
        h = h * (xs[j] - xs[k])
    names = tuple(f"x{i + 1}" for i in range(s)) + ("u",)
    forbidden = [_add(_var(i, nv), _const(-1, nv)) for i in range(used)]
    forbidden += [_add(_var(j, nv), _var(k, nv, -1)) for j, k in itertools.combinations(range(used), 2)]
    z = nv  # homogenizing slot used by the saturation routine
    forms = [LinearForm(i, z, 1) for i in range(used)]
    forms += [LinearForm(j, k, 1) for j, k in itertools.combinations(range(used), 2)]
    return MinorSystem(SPHERICAL, d, nv, entries, names, h, used, forbidden, forms)


def build_general_system(g: CandidateGramMatrix, d: int) -> MinorSystem:
    """Minors of the centered matrix C with x_0 = 1, plus the saturation polynomial.

    ``C_ij = G_in + G_jn - G_ij + delta_ij`` with the last vertex n as basepoint,
    colors read as squared distances and the unit diagonal of G cancelling
    the Kronecker delta; so ``C_ii = 2 x_{c(i, n)}``.
    """
    _check_order(g, d + 2, "general system")
    if d < 1:
        raise ValueError("d must be positive")
    s = g.s
    nv = s  # x_1..x_{s-1}, u

    def color_poly(c):
        return _const(1, nv) if c == 0 else _var(c - 1, nv)

    def add(*terms):
        out: dict = {}
        for sign, p in terms:
            for mono, v in p.items():
                w = out.get(mono, 0) + sign * v
                if w:
                    out[mono] = w
                else:
                    out.pop(mono, None)
        return out

    m = g.rows()
    b = g.n - 1
    entries = []
    for i in range(b):
        row = []
        for j in range(b):
            if i == j:
                row.append(add((2, color_poly(m[i][b]))))
            else:
                row.append(add((1, color_poly(m[i][b])), (1, color_poly(m[j][b])), (-1, color_poly(m[i][j]))))
        entries.append(row)
    used = g.used_colors
    xs = [Poly.var(c - 1, nv) for c in range(1, used)]
    h = Poly.const(1, nv)
    for x in xs:
        h = h * x * (x - 1)
    for j, k in itertools.combinations(range(len(xs)), 2):
        h = h * (xs[j] - xs[k])
    names = tuple(f"x{i + 1}" for i in range(1, s)) + ("u",)
    forbidden = [_var(i, nv) for i in range(used - 1)]
    forbidden += [_add(_var(i, nv), _const(-1, nv)) for i in range(used - 1)]
    forbidden += [_add(_var(j, nv), _var(k, nv, -1)) for j, k in itertools.combinations(range(used - 1), 2)]
    z = nv
    forms = [LinearForm(i) for i in range(used - 1)]
    forms += [LinearForm(i, z, 1) for i in range(used - 1)]
    forms += [LinearForm(j, k, 1) for j, k in itertools.combinations(range(used - 1), 2)]
    return MinorSystem(GENERAL, d, nv, entries, names, h, used, forbidden, forms)


def build_system(g: CandidateGramMatrix, d: int, mode: str) -> MinorSystem:
    if mode == SPHERICAL:
        return build_spherical_system(g, d)
    if mode == GENERAL:
        return build_general_system(g, d)
    raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


# ---------------------------------------------------------------------------
# feasibility


def minor_basis(sys: MinorSystem, budget: GroebnerBudget = DEFAULT_BUDGET, extra: Sequence[Poly] = ()):
    """Grevlex basis of all stripped minors (plus ``extra``); None for the unit ideal.

    Minors are added 32 at a time so that an infeasible system usually stops
    after a few batches.  Raises ``BudgetExhausted`` on overrun.
    """
    eng = GroebnerEngine(sys.arity, GREVLEX, budget)
    if extra:
        eng.add(list(extra))
    minors = sys.minors()
    while True:
        chunk = list(itertools.islice(minors, 32))
        if not chunk:
            break
        eng.add(chunk)
        eng.complete()
        if eng.is_unit:
            return None
    return [Poly(dict(eng.polys[k].terms), sys.arity) for k in eng.active]


def rank_feasible(sys: MinorSystem, budget: GroebnerBudget = DEFAULT_BUDGET) -> Verdict:
    """INFEASIBLE iff 1 lies in the ideal of all minors and the saturation polynomial.

    The minors' basis is computed first (with early exit on the unit ideal);
    the saturation polynomial is then accounted for by saturating with each
    of its linear factors, which decides the same question.  UNKNOWN means
    the budget ran out; callers must keep the candidate.
    """
    try:
        basis = minor_basis(sys, budget)
        if basis is None:
            return Verdict.INFEASIBLE
        if not basis:
            return Verdict.FEASIBLE
        trivial = saturation_is_trivial(basis, sys.forms, budget=budget)
    except BudgetExhausted:
        return Verdict.UNKNOWN
    return Verdict.INFEASIBLE if trivial else Verdict.FEASIBLE


def candidate_feasible(g: CandidateGramMatrix, d: int, mode: str, budget: GroebnerBudget = DEFAULT_BUDGET) -> Verdict:
    return rank_feasible(build_system(g, d, mode), budget)


# ---------------------------------------------------------------------------
# solving terminal systems


@dataclass
class ParameterAssignment:
    """Exact values for the colors of one candidate (index = color)."""

    values: tuple
    mode: str

    def normalized_by_max(self) -> tuple:
        """Divide by the largest value (general mode convention for reporting)."""
        top = self.values[0]
        for v in self.values[1:]:
            if v > top:
                top = v
        return tuple(v / top for v in self.values)

    def sort_key(self):
        return tuple((len(_min_poly(v)), tuple(_min_poly(v)), _midpoint(v)) for v in self.values)


def _min_poly(v):
    if isinstance(v, FieldElement):
        return tuple(v.minimal_polynomial())
    return (-Fraction(v), Fraction(1))


def _midpoint(v):
    if isinstance(v, FieldElement):
        lo, hi = v.enclosure(Fraction(1, 10**30))
        return (lo + hi) / 2
    return Fraction(v)


@dataclass
class SolutionSet:
    """Real isolated solutions of a terminal system, split by admissibility."""

    admissible: list = field(default_factory=list)
    shadows: list = field(default_factory=list)
    rejected: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    complex_count: int = 0


def _is_standard(mono, leading):
    return not any(all(a >= b for a, b in zip(mono, lm)) for lm in leading)


def _leading_monomials(eng):
    return [eng.polys[k].lm for k in eng.active]


def _zero_dimensional(eng, nvars):
    lms = _leading_monomials(eng)
    for i in range(nvars):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
            return False
    return True


def _krylov_minpoly(eng, p: Poly, max_degree: int):
    """Minimal polynomial of multiplication by ``p`` applied to 1 (low degree first)."""
    nv = eng.nvars
    vecs = []
    pivots = []  # reduced echelon rows: (pivot monomial, row dict, combination over powers)
    power = Poly.const(1, nv)
    for k in range(max_degree + 1):
        nf = eng.normal_form(power)
        row = dict(nf.terms)
        comb = {k: Fraction(1)}
        for pm, prow, pcomb in pivots:
            c = row.get(pm)
            if c:
                for m, v in prow.items():
                    w = row.get(m, 0) - c * v
                    if w:
                        row[m] = w
                    else:
                        row.pop(m, None)
                for j, v in pcomb.items():
                    comb[j] = comb.get(j, 0) - c * v
        if not row:
            coeffs = [comb.get(j, Fraction(0)) for j in range(k + 1)]
            return up.monic(coeffs), vecs
        pm = min(row)
        c = row[pm]
        row = {m: v / c for m, v in row.items()}
        comb = {j: v / c for j, v in comb.items()}
        pivots.append((pm, row, comb))
        vecs.append(nf)
        power = eng.normal_form(power * p)
    raise ArithmeticError("Krylov sequence did not terminate; ideal is not zero-dimensional")


def _quotient_dimension(eng, nvars):
    lms = _leading_monomials(eng)
    bounds = []
    for i in range(nvars):
        pure = [lm[i] for lm in lms if lm[i] > 0 and sum(lm) == lm[i]]
        bounds.append(min(pure))
    count = 0
    for mono in itertools.product(*(range(b) for b in bounds)):
        if _is_standard(mono, lms):
            count += 1
    return count


def _express_in_powers(eng, target: Poly, t: Poly, degree: int):
    """Coefficients a_k with NF(target) = sum a_k NF(t^k), k < degree."""
    nv = eng.nvars
    cols = []
    power = Poly.const(1, nv)
    for _ in range(degree):
        cols.append(eng.normal_form(power).terms)
        power = eng.normal_form(power * t)
    rhs = eng.normal_form(target).terms
    monos = sorted({m for c in cols for m in c} | set(rhs))
    # solve the (overdetermined, consistent) linear system by elimination
    aug = [[c.get(m, Fraction(0)) for c in cols] + [rhs.get(m, Fraction(0))] for m in monos]
    nrow, ncol = len(aug), degree
    r = 0
    where = [-1] * ncol
    for col in range(ncol):
        piv = next((i for i in range(r, nrow) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(nrow):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        where[col] = r
        r += 1
    for i in range(r, nrow):
        if aug[i][-1] != 0:
            raise ArithmeticError("coordinate is not a polynomial in the separating element")
    return [aug[where[c]][-1] if where[c] >= 0 else Fraction(0) for c in range(ncol)]


def _radicalize(eng, sys_arity):
    """Add squarefree parts of each variable's minimal polynomial (zero-dimensional case)."""
    added = []
    for i in range(sys_arity):
        x = Poly.var(i, sys_arity)
        mp, _ = _krylov_minpoly(eng, x, 10_000)
        sf = up.squarefree_part(mp)
        if len(sf) < len(mp):
            added.append(Poly.from_univariate(sf, i, sys_arity))
    if added:
        eng.add(added)
        eng.complete()
    return bool(added)


def _points_of(eng, nvars):
    """All complex solutions as (field or None, minimal polynomial, coordinates in t)."""
    while _radicalize(eng, nvars):
        pass
    dim = _quotient_dimension(eng, nvars)
    for c in itertools.count(1):
        t = Poly.zero(nvars)
        for i in range(nvars):
            t = t + Poly.var(i, nvars) * (c ** i)
        f, _ = _krylov_minpoly(eng, t, dim)
        if len(f) - 1 == dim:
            break
        if c > 4 * dim * dim + 10:
            raise ArithmeticError("no separating linear form found")
    coords = [_express_in_powers(eng, Poly.var(i, nvars), t, dim) for i in range(nvars)]
    return f, coords, dim


def solve_parameters(
    sys: MinorSystem,
    g: CandidateGramMatrix,
    budget: GroebnerBudget = GroebnerBudget(max_basis=2000, max_degree=60, max_pairs=2_000_000),
) -> SolutionSet:
    """Exact real solutions of the rank system of a terminal matrix.

    The basis of all minors is saturated by the forbidden linear forms, which
    removes exactly the components on which some value is excluded; the
    remaining ideal must be zero-dimensional.  Every point is confirmed by an
    exact rank computation and certified with :mod:`fewdist.geomcert`; points
    that are not realizable are ``rejected``, and those of a matrix using
    fewer than ``s`` distinct values are ``shadows``.
    """
    nv = sys.arity
    # colors the matrix does not use, and u, are pinned to 0
    pins = [Poly.var(i, nv) for i in _unused_variables(sys)] + [Poly.var(sys.u_index, nv)]
    basis = minor_basis(sys, budget, pins)
    if basis is None:
        return SolutionSet()
    gens = saturate(basis, sys.forms, budget)
    eng = GroebnerEngine(nv, GREVLEX, budget)
    eng.add(gens + pins)
    eng.complete()
    if eng.is_unit:
        return SolutionSet()
    if not _zero_dimensional(eng, nv):
        raise NonIsolatedSolutions(f"solution set of {g.to_line()} is positive-dimensional")
    f, coords, _ = _points_of(eng, nv)
    out = SolutionSet()
    for factor in rational_factors(f):
        roots = AlgebraicNumber.real_roots(factor)
        out.complex_count += (len(factor) - 1) - len(roots)
        for theta in roots:
            if len(factor) == 2:
                val = lambda a, r=theta.as_fraction(): up.evaluate(a, r)  # noqa: E731
            else:
                field_ = NumberField(theta)
                val = lambda a, K=field_: FieldElement(K, a)  # noqa: E731
            point = [val(cs) for cs in coords]
            values = _color_values(sys, point)
            m = concrete_matrix(g, values, sys.mode)
            if exact_rank(m) > sys.dim:
                continue
            assignment = ParameterAssignment(tuple(values), sys.mode)
            cert = certify(g, values, sys.dim, sys.mode)
            if not cert.realizable:
                out.rejected.append(assignment)
            elif g.used_colors < g.s:
                out.shadows.append(assignment)
                out.certificates.append(cert)
            else:
                out.admissible.append(assignment)
                out.certificates.append(cert)
    out.admissible.sort(key=ParameterAssignment.sort_key)
    out.shadows.sort(key=ParameterAssignment.sort_key)
    return out


def _unused_variables(sys: MinorSystem) -> list:
    if sys.mode == SPHERICAL:
        return list(range(sys.used_colors, sys.arity - 1))
    return list(range(max(sys.used_colors - 1, 0), sys.arity - 1))


def _color_values(sys: MinorSystem, point: list) -> list:
    used = sys.used_colors
    if sys.mode == SPHERICAL:
        return [point[c] for c in range(used)]
    return [Fraction(1)] + [point[c - 1] for c in range(1, used)]


# ---------------------------------------------------------------------------
# verdict cache


class VerdictCache:
    """Append-only ``<key> <d> <mode> <verdict>`` file for resumable filtering."""

    def __init__(self, path: str | os.PathLike | None):
        self.path = path
        self.data: dict = {}
        if path is not None and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    parts = line.split()
                    if len(parts) != 6:
                        continue
                    key = " ".join(parts[:3])
                    self.data[(key, int(parts[3]), parts[4])] = Verdict(parts[5])

    @staticmethod
    def record_key(g: CandidateGramMatrix) -> str:
        return format_line(g.n, g.s, g.colors)

    def get(self, g: CandidateGramMatrix, d: int, mode: str):
        return self.data.get((self.record_key(g), d, mode))

    def put(self, g: CandidateGramMatrix, d: int, mode: str, verdict: Verdict) -> None:
        k = (self.record_key(g), d, mode)
        if k in self.data:
            return
        self.data[k] = verdict
        if self.path is not None:
            with open(self.path, "a") as fh:
                fh.write(f"{k[0]} {d} {mode} {verdict.value}\n")


def certify_assignment(g: CandidateGramMatrix, a: ParameterAssignment, d: int) -> EuclideanCertificate:
    return certify(g, list(a.values), d, a.mode)


def _point(sys: MinorSystem, values: Sequence) -> list:
    vals = list(values)
    if sys.mode == GENERAL:
        point = [vals[c] for c in range(1, sys.used_colors)]
    else:
        point = vals[: sys.used_colors]
    while len(point) < sys.arity - 1:
        point.append(Fraction(0))
    point.append(Fraction(0))
    return point


def numeric_check(sys: MinorSystem, values: Sequence) -> bool:
    """True iff the symbolic matrix has rank at most d at the given color values.

    Equivalently every minor vanishes there; the rank is computed exactly.
    """
    point = _point(sys, values)
    m = [[Poly(e, sys.arity).evaluate(point) for e in row] for row in sys.entries]
    return exact_rank(m) <= sys.dim


def minors_vanish(sys: MinorSystem, values: Sequence, limit: int | None = None) -> bool:
    """Evaluate the (stripped) minor polynomials themselves, at most ``limit`` of them."""
    point = _point(sys, values)
    return all(p.evaluate(point) == 0 for p in itertools.islice(sys.minors(), limit))
