"""Hypothesis strategies and property checks shared by the test modules.

Each ``check_*`` function raises AssertionError on a counterexample.  The
module tests run them with moderate example counts; the acceptance suite
runs all of them together and counts the executed cases.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from fewdist.exactmath.groebner import GroebnerBudget, GroebnerEngine, groebner_reduced, poly_reduce
from fewdist.exactmath.linalg import bareiss_rank, charpoly, principal_minors_nonnegative, psd_from_charpoly
from fewdist.exactmath.poly import GREVLEX, Poly, mono_divides, mono_lcm
from fewdist.gramgen import CandidateGramMatrix, canonical_key, first_occurrence
from fewdist.geomcert import cholesky_reconstruct, NotPSDError

SMALL_BUDGET = GroebnerBudget(max_basis=200, max_degree=30, max_pairs=20_000)

# ---------------------------------------------------------------------------
# strategies


def polys(nvars: int = 3, max_exp: int = 2, max_terms: int = 3):
    mono = st.tuples(*[st.integers(0, max_exp)] * nvars)
    coef = st.integers(-6, 6).filter(bool)
    return st.dictionaries(mono, coef, min_size=1, max_size=max_terms).map(lambda d: Poly(d, nvars))


def generator_lists(nvars: int = 3):
    return st.lists(polys(nvars), min_size=1, max_size=3)


def int_matrices(n: int, lo: int = -3, hi: int = 3):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


def low_rank_matrices(n: int):
    """Products A*B with A n x k and B k x n, so ranks below n are common."""

    @st.composite
    def build(draw):
        k = draw(st.integers(1, n))
        a = draw(st.lists(st.lists(st.integers(-3, 3), min_size=k, max_size=k), min_size=n, max_size=n))
        b = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=k, max_size=k))
        return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(n)] for i in range(n)]

    return build()


def symmetric_matrices(n: int):
    """Random symmetric 4x4 matrices, half of them Gram matrices B^T B."""

    @st.composite
    def build(draw):
        if draw(st.booleans()):
            k = draw(st.integers(1, n))
            b = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=k, max_size=k))
            m = [[sum(b[t][i] * b[t][j] for t in range(k)) for j in range(n)] for i in range(n)]
            if draw(st.booleans()):
                shift = draw(st.integers(-2, 1))
                m = [[m[i][j] + (shift if i == j else 0) for j in range(n)] for i in range(n)]
            return m
        vals = draw(st.lists(st.integers(-4, 4), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
        m = [[0] * n for _ in range(n)]
        it = iter(vals)
        for i in range(n):
            for j in range(i + 1):
                m[i][j] = m[j][i] = next(it)
        return m

    return build()


@st.composite
def colored_matrices(draw, max_n: int = 7, max_s: int = 4):
    n = draw(st.integers(2, max_n))
    s = draw(st.integers(1, max_s))
    vec = draw(st.lists(st.integers(0, s - 1), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    g = CandidateGramMatrix(n, s, first_occurrence(vec))
    perm = draw(st.permutations(list(range(n))))
    sigma = draw(st.permutations(list(range(s))))
    return g, perm, sigma


# ---------------------------------------------------------------------------
# oracles


def to_sympy(p: Poly, gens):
    return sympy.Poly.from_dict({m: sympy.Rational(c.numerator, c.denominator) for m, c in p.terms.items()}, *gens)


def sympy_reduced_basis(gens_list: list, nvars: int) -> set:
    syms = sympy.symbols(f"x0:{nvars}")
    G = sympy.groebner([to_sympy(p, syms).as_expr() for p in gens_list], *syms, order="grevlex")
    out = set()
    for g in G.exprs:
        d = sympy.Poly(g, *syms).as_dict()
        lead = sympy.Poly(g, *syms).LC(order="grevlex")
        out.add(frozenset((m, Fraction(int((c / lead).p), int((c / lead).q))) for m, c in d.items()))
    return out


def basis_signature(basis: list) -> set:
    return {frozenset(b.terms.items()) for b in basis}


def _spoly(f: Poly, g: Poly) -> Poly:
    lf, lg = f.leading_monomial(GREVLEX), g.leading_monomial(GREVLEX)
    lcm = mono_lcm(lf, lg)
    mf = Poly({tuple(a - b for a, b in zip(lcm, lf)): 1 / f.leading_coefficient(GREVLEX)}, f.nvars)
    mg = Poly({tuple(a - b for a, b in zip(lcm, lg)): 1 / g.leading_coefficient(GREVLEX)}, g.nvars)
    return mf * f - mg * g


# ---------------------------------------------------------------------------
# checks


def check_groebner_spoly_reduction(gens: list) -> None:
    """S-polynomials and inputs reduce to 0; remainders are fully reduced; matches the oracle."""
    basis = groebner_reduced(gens, GREVLEX, SMALL_BUDGET)
    nvars = gens[0].nvars
    if basis == [Poly.zero(nvars)]:
        assert all(p.is_zero() for p in gens)
        return
    for f, g in itertools.combinations(basis, 2):
        assert poly_reduce(_spoly(f, g), basis).is_zero()
    for p in gens:
        assert poly_reduce(p, basis).is_zero()
    lms = [b.leading_monomial(GREVLEX) for b in basis]
    probe = gens[0] * Poly.var(0, nvars) + 1
    r = poly_reduce(probe, basis)
    for m in r.terms:
        assert not any(mono_divides(lm, m) for lm in lms)
    assert basis_signature(basis) == sympy_reduced_basis(gens, nvars)


def check_reduced_basis_permutation(gens: list, perm: list) -> None:
    shuffled = [gens[i] for i in perm]
    a = groebner_reduced(gens, GREVLEX, SMALL_BUDGET)
    b = groebner_reduced(shuffled, GREVLEX, SMALL_BUDGET)
    assert basis_signature(a) == basis_signature(b)


def check_rabinowitsch(f: Poly) -> None:
    """``1 in <f, 1 - u f>`` for every nonzero f (u a fresh variable)."""
    n = f.nvars + 1
    lifted = Poly({m + (0,): c for m, c in f.terms.items()}, n)
    u = Poly.var(n - 1, n)
    eng = GroebnerEngine(n, GREVLEX, SMALL_BUDGET)
    eng.add([lifted, 1 - u * lifted])
    eng.complete()
    assert eng.is_unit


def check_bareiss_rank(m: list) -> None:
    assert bareiss_rank(m) == sympy.Matrix(m).rank()


def check_psd_oracle(m: list) -> None:
    assert psd_from_charpoly(charpoly(m)) == principal_minors_nonnegative(m)


def check_reconstruction(m: list) -> None:
    """For PSD matrices the pivoted factorization reproduces m exactly."""
    psd = principal_minors_nonnegative(m)
    r = bareiss_rank(m)
    try:
        rec = cholesky_reconstruct([[Fraction(x) for x in row] for row in m], r)
    except NotPSDError:
        assert not psd
        return
    assert psd
    assert rec.gram() == [[Fraction(x) for x in row] for row in m]


def check_orbit_constancy(g: CandidateGramMatrix, perm: list, sigma: list) -> None:
    assert canonical_key(g.permuted(perm, sigma)) == canonical_key(g)


def check_line_roundtrip(g: CandidateGramMatrix) -> None:
    assert CandidateGramMatrix.from_line(g.to_line()) == g
