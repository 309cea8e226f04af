from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

import properties as P
from fewdist.exactmath import univariate as up
from fewdist.exactmath.algebraic import AlgebraicNumber, FieldElement, NumberField, rational_factors
from fewdist.exactmath.groebner import BudgetExhausted, GroebnerBudget, groebner_reduced, ideal_is_trivial, poly_reduce
from fewdist.exactmath.linalg import bareiss_det, bareiss_rank, charpoly, rank
from fewdist.exactmath.poly import GREVLEX, LEX, Poly, poly_from_expr
from fewdist.exactmath.saturation import LinearForm, saturate, saturation_is_trivial

X = ("x", "y", "z")


def p(expr, names=X):
    return poly_from_expr(expr, names)


# --- polynomials and Groebner bases


def test_poly_arithmetic_matches_sympy():
    a, b = p("x^2*y - 3*z + 1"), p("y - 2*x*z")
    assert (a * b - b * a).is_zero()
    prod = sympy.expand(sympy.sympify("(x**2*y - 3*z + 1)*(y - 2*x*z)"))
    assert a * b == p(str(prod))
    assert (a ** 2).total_degree() == 6
    assert a.evaluate([1, 2, 3]) == -6


def test_known_reduced_basis():
    # the twisted cubic
    gens = [p("x^2 - y"), p("x^3 - z")]
    basis = groebner_reduced(gens, LEX)
    assert P.basis_signature(basis) == {
        frozenset(p("x^2 - y").terms.items()),
        frozenset(p("x*y - z").terms.items()),
        frozenset(p("x*z - y^2").terms.items()),
        frozenset(p("y^3 - z^2").terms.items()),
    }


def test_unit_ideal_and_budget():
    assert ideal_is_trivial([p("x*y - 1"), p("x")])
    assert not ideal_is_trivial([p("x*y - 1")])
    with pytest.raises(BudgetExhausted):
        groebner_reduced([p("x^3 - y*z + 1"), p("y^3 - x*z"), p("z^3 - x*y - 2")], GREVLEX, GroebnerBudget(2, 40, 10))


def test_poly_reduce_remainder():
    basis = groebner_reduced([p("x^2 - y"), p("y^2 - 1")])
    r = poly_reduce(p("x^5 + y^3"), basis)
    assert r == p("x + y")


@settings(max_examples=150)
@given(P.generator_lists())
def test_groebner_against_oracle(gens):
    P.check_groebner_spoly_reduction(gens)


@settings(max_examples=100)
@given(P.generator_lists(), st.randoms(use_true_random=False))
def test_reduced_basis_permutation(gens, rnd):
    perm = list(range(len(gens)))
    rnd.shuffle(perm)
    P.check_reduced_basis_permutation(gens, perm)


@settings(max_examples=150)
@given(P.polys().filter(lambda f: not f.is_constant()))
def test_rabinowitsch(f):
    P.check_rabinowitsch(f)


# --- saturation


def test_saturation_removes_forbidden_component():
    # V(x*(x-1)) with x = 0 forbidden leaves x = 1
    gens = [Poly({(2, 0): 1, (1, 0): -1}, 2)]
    assert not saturation_is_trivial(gens, [LinearForm(0)])
    out = saturate(gens, [LinearForm(0)])
    assert poly_reduce(Poly({(1, 0): 1, (0, 0): -1}, 2), groebner_reduced(out)).is_zero()
    # forbidding both roots empties it
    assert saturation_is_trivial(gens, [LinearForm(0), LinearForm(0, 2, 1)])


def test_saturation_by_difference_form():
    # x = y is the only solution of (x - y)^2 = 0 ; forbidding x = y leaves nothing
    gens = [p("x^2 - 2*x*y + y^2", ("x", "y"))]
    assert saturation_is_trivial(gens, [LinearForm(0, 1, 1)])
    gens = [p("(x - y)*(x + y - 1)", ("x", "y"))]
    assert not saturation_is_trivial(gens, [LinearForm(0, 1, 1)])


@settings(max_examples=60)
@given(P.generator_lists(2))
def test_saturation_matches_rabinowitsch(gens):
    forms = [LinearForm(0), LinearForm(1, 2, 1)]
    h = Poly.var(0, 3) * (Poly.var(1, 3) - 1)
    lifted = [Poly({m + (0,): c for m, c in g.terms.items()}, 3) for g in gens]
    u = Poly.var(2, 3)
    try:
        expected = ideal_is_trivial(lifted + [1 - u * h], GREVLEX, P.SMALL_BUDGET)
        got = saturation_is_trivial(gens, forms, budget=P.SMALL_BUDGET)
    except BudgetExhausted:
        return
    if expected is None:
        return
    assert got == expected


# --- univariate and algebraic numbers


def test_real_roots_of_sqrt5_polynomial():
    roots = AlgebraicNumber.real_roots([-5, 0, 1])
    assert len(roots) == 2
    assert abs(float(roots[1]) - 5 ** 0.5) < 1e-12


@settings(max_examples=200)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=6).filter(lambda c: c[-1] != 0))
def test_root_isolation_counts(coeffs):
    t = sympy.Symbol("t")
    expr = sum(c * t**i for i, c in enumerate(coeffs))
    expected = len(sympy.real_roots(sympy.Poly(expr, t), multiple=True))
    distinct = len(set(sympy.real_roots(sympy.Poly(expr, t), multiple=True)))
    assert len(up.isolate_real_roots([Fraction(c) for c in coeffs])) == distinct
    assert expected >= distinct


def test_field_element_arithmetic():
    theta = AlgebraicNumber.real_roots([-5, 0, 1])[1]
    K = NumberField(theta)
    r5 = K.gen()
    phi = (1 + r5) / 2
    assert phi * phi - phi - 1 == 0
    assert phi.minimal_polynomial() == [Fraction(-1), Fraction(-1), Fraction(1)]
    assert (phi - 2).sign() < 0 < (phi - 1).sign()
    assert (r5 / r5).as_fraction() == 1
    assert FieldElement(K, [3]).is_rational()


def test_rational_factors():
    # (t - 1)(t^2 - 5)
    fs = rational_factors([5, -5, -1, 1])
    assert sorted(len(f) for f in fs) == [2, 3]


# --- linear algebra


def test_det_and_rank_small():
    assert bareiss_det([[2, 1], [1, 2]]) == 3
    assert bareiss_rank([[1, 2], [2, 4]]) == 1
    assert rank([[Fraction(1, 2), 1], [1, 2]]) == 1


def test_charpoly_matches_sympy():
    m = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    lam = sympy.Symbol("lam")
    ref = sympy.Poly(sympy.Matrix(m).charpoly(lam).as_expr(), lam).all_coeffs()
    assert charpoly(m) == [Fraction(int(c)) for c in ref]


@settings(max_examples=300)
@given(P.low_rank_matrices(6))
def test_bareiss_rank_random(m):
    P.check_bareiss_rank(m)


@settings(max_examples=300)
@given(P.symmetric_matrices(4))
def test_psd_oracle_random(m):
    P.check_psd_oracle(m)
