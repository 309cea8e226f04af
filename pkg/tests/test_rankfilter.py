from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fewdist.exactmath.groebner import GroebnerBudget, ideal_is_trivial
from fewdist.exactmath.poly import GREVLEX
from fewdist.fixtures import PATTERNS, fixtures
from fewdist.geomcert import GENERAL, SPHERICAL, describe_value
from fewdist.gramgen import CandidateGramMatrix, first_occurrence, generate_levels
from fewdist.rankfilter import (
    ParameterAssignment,
    Verdict,
    VerdictCache,
    build_general_system,
    build_spherical_system,
    build_system,
    candidate_feasible,
    minors_vanish,
    numeric_check,
    rank_feasible,
    solve_parameters,
)

FIXTURES = fixtures()


def simplex(n, s=1):
    return CandidateGramMatrix(n, s, bytes(n * (n - 1) // 2))


def test_system_shapes():
    g, _ = CandidateGramMatrix.from_letters(PATTERNS["S12C"])
    sph = build_spherical_system(g, 3)
    assert sph.arity == 5 and sph.size == 12 and sph.variables[-1] == "u"
    gen = build_general_system(g, 3)
    assert gen.arity == 4 and gen.size == 11
    with pytest.raises(ValueError):
        build_spherical_system(simplex(3), 3)
    with pytest.raises(ValueError):
        build_general_system(simplex(4), 3)
    with pytest.raises(ValueError):
        build_system(g, 3, "hyperbolic")


def test_minors_are_distinct_up_to_sign():
    sysm = build_spherical_system(CandidateGramMatrix(5, 2, first_occurrence([0, 1, 0, 1, 1, 0, 0, 1, 0, 1])), 2)
    seen = set()
    for m in sysm.minors():
        key = frozenset(m.terms.items())
        neg = frozenset((k, -v) for k, v in m.terms.items())
        assert key not in seen and neg not in seen
        seen.add(key)


@pytest.mark.parametrize("name", ["S12A", "S12B", "S12C", "G13E", "G13A", "G13B"])
def test_fixture_values_annihilate_minors(name):
    fx = FIXTURES[name]
    g, _ = fx.matrix()
    sysm = build_system(g, fx.dim, fx.mode)
    vals = fx.color_values()
    if fx.mode == GENERAL:
        vals = [v / vals[0] for v in vals]
    assert numeric_check(sysm, vals)
    assert minors_vanish(sysm, vals, limit=300)
    # a perturbed value breaks the rank condition
    bumped = list(vals)
    bumped[-1] += Fraction(1, 7)
    assert not numeric_check(sysm, bumped)


def test_regular_simplex_verdicts():
    # a one-color K4 has rank 3 unless the value is 1
    assert candidate_feasible(simplex(4), 2, SPHERICAL) == Verdict.INFEASIBLE
    assert candidate_feasible(simplex(4), 3, SPHERICAL) == Verdict.FEASIBLE
    # the square on the circle
    square, _ = CandidateGramMatrix.from_letters(["1aba", "a1ab", "ba1a", "aba1"])
    assert candidate_feasible(square, 2, SPHERICAL) == Verdict.FEASIBLE
    assert candidate_feasible(square, 1, SPHERICAL) == Verdict.INFEASIBLE


def test_budget_exhaustion_is_unknown():
    g, _ = CandidateGramMatrix.from_letters(PATTERNS["S12B"])
    tiny = GroebnerBudget(max_basis=2, max_degree=3, max_pairs=5)
    assert rank_feasible(build_spherical_system(g, 3), tiny) == Verdict.UNKNOWN


def test_level_filter_counts():
    level4 = list(generate_levels(4, 4))[-1]
    assert sum(candidate_feasible(g, 3, SPHERICAL) != Verdict.INFEASIBLE for g in level4) == 22
    level5 = list(generate_levels(5, 3))[-1]
    assert sum(candidate_feasible(g, 3, GENERAL) != Verdict.INFEASIBLE for g in level5) == 141


def _rabinowitsch_verdict(sysm):
    gens = list(sysm.minors(strip=False)) + [sysm.saturation()]
    res = ideal_is_trivial(gens, GREVLEX, GroebnerBudget(300, 30, 50_000))
    if res is None:
        return None
    return Verdict.INFEASIBLE if res else Verdict.FEASIBLE


@st.composite
def small_candidates(draw):
    mode = draw(st.sampled_from([SPHERICAL, GENERAL]))
    d = 2
    n = draw(st.integers(4 if mode == GENERAL else 3, 5))
    s = draw(st.integers(1, 3))
    vec = draw(st.lists(st.integers(0, s - 1), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return CandidateGramMatrix(n, s, first_occurrence(vec)), d, mode


@settings(max_examples=60)
@given(small_candidates())
def test_stripping_and_saturation_match_rabinowitsch(case):
    g, d, mode = case
    sysm = build_system(g, d, mode)
    expected = _rabinowitsch_verdict(sysm)
    if expected is None:
        return
    assert rank_feasible(sysm) == expected


def _described(sol):
    return [[describe_value(v) for v in a.values] for a in sol.admissible]


def test_solve_s12b():
    g, _ = CandidateGramMatrix.from_letters(PATTERNS["S12B"])
    sol = solve_parameters(build_spherical_system(g, 3), g)
    assert [list(a.values) for a in sol.admissible] == [[Fraction(7, 11), Fraction(-1, 11), Fraction(-5, 11), Fraction(-9, 11)]]
    assert sol.certificates[0].realizable


def test_solve_s12c_two_solutions():
    g, _ = CandidateGramMatrix.from_letters(PATTERNS["S12C"])
    sol = solve_parameters(build_spherical_system(g, 3), g)
    got = sorted(tuple(a.values) for a in sol.admissible)
    half = Fraction(1, 2)
    assert got == [(-half, 0, half, -1), (half, 0, -half, -1)]


def test_solve_hexagram_general_plane():
    g, _ = CandidateGramMatrix.from_letters(PATTERNS["G13E"])
    sol = solve_parameters(build_general_system(g, 2), g)
    assert [list(a.values) for a in sol.admissible] == [[1, 3, 4, 7, 9, 12]]


def test_solve_icosahedron_general():
    g, _ = CandidateGramMatrix.from_letters(PATTERNS["S12A"])
    sol = solve_parameters(build_general_system(g, 3), g)
    assert len(sol.admissible) == 2 and not sol.shadows
    norm = {tuple(sorted(float(v) for v in a.normalized_by_max())) for a in sol.admissible}
    r5 = 5 ** 0.5
    expected = tuple(sorted([(5 - r5) / 10, (5 + r5) / 10, 1.0]))
    assert all(max(abs(a - b) for a, b in zip(t, expected)) < 1e-12 for t in norm)


def test_solve_shadow_of_simplex():
    # one-color K4 in R^3: the value -1/3 uses fewer colors than s = 2
    g = simplex(4, s=2)
    sol = solve_parameters(build_spherical_system(g, 3), g)
    assert not sol.admissible
    assert [a.values for a in sol.shadows] == [(Fraction(-1, 3),)]


def test_parameter_assignment_normalization():
    a = ParameterAssignment((Fraction(1), Fraction(4), Fraction(2)), GENERAL)
    assert a.normalized_by_max() == (Fraction(1, 4), Fraction(1), Fraction(1, 2))


def test_verdict_cache_roundtrip(tmp_path):
    path = tmp_path / "verdicts.txt"
    cache = VerdictCache(path)
    g = simplex(4)
    cache.put(g, 3, SPHERICAL, Verdict.FEASIBLE)
    cache.put(g, 3, SPHERICAL, Verdict.INFEASIBLE)  # ignored: entries are immutable
    again = VerdictCache(path)
    assert again.get(g, 3, SPHERICAL) == Verdict.FEASIBLE
    assert again.get(g, 2, SPHERICAL) is None
    assert path.read_text().count("\n") == 1
