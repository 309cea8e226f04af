"""Saturation of polynomial ideals by products of linear forms.

``1 in I + <1 + u*h>`` holds iff the saturation ``I : h^inf`` is the unit
ideal.  When ``h`` is a product of linear forms this saturation is computed
one factor at a time on the homogenized ideal: after a linear change of
coordinates that turns the factor into the smallest variable ``y`` of a
degree reverse lexicographic order, dividing every element of a Groebner
basis by its largest power of ``y`` yields a basis of ``J : y^inf`` (Bayer's
criterion).  Each step costs one Groebner basis of an ideal no larger than
the original, avoiding the high-degree Rabinowitsch generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .groebner import DEFAULT_BUDGET, GroebnerBudget, GroebnerEngine
from .poly import GREVLEX, Poly, integer_terms


@dataclass(frozen=True)
class LinearForm:
    """``x_v - c * x_w`` in homogeneous coordinates (``w`` None means ``x_v``)."""

    v: int
    w: int | None = None
    c: int = 1


def homogenize(terms: dict, nvars: int) -> dict:
    """Append a homogenizing variable as the last slot."""
    deg = max(sum(m) for m in terms)
    return {m + (deg - sum(m),): c for m, c in terms.items()}


def _shift(terms: dict, v: int, w: int, c: int) -> dict:
    """Substitute ``x_v -> x_v + c * x_w``."""
    out: dict = {}
    for m, a in terms.items():
        e = m[v]
        if e == 0:
            out[m] = out.get(m, 0) + a
            continue
        for k in range(e + 1):
            coef = a * comb(e, k) * c ** (e - k)
            mm = list(m)
            mm[v] = k
            mm[w] += e - k
            mm = tuple(mm)
            out[mm] = out.get(mm, 0) + coef
    return {m: x for m, x in out.items() if x}


def _permute(terms: dict, order: Sequence[int]) -> dict:
    return {tuple(m[i] for i in order): c for m, c in terms.items()}


def _inverse(order: Sequence[int]) -> list:
    inv = [0] * len(order)
    for pos, i in enumerate(order):
        inv[i] = pos
    return inv


def _groebner_terms(gens: list, nvars: int, budget: GroebnerBudget) -> list:
    eng = GroebnerEngine(nvars, GREVLEX, budget)
    eng.add([Poly(t, nvars) for t in gens])
    eng.complete()
    return [dict(eng.polys[k].terms) for k in eng.active]


def saturate_by_form(gens: list, nvars: int, form: LinearForm, budget: GroebnerBudget = DEFAULT_BUDGET) -> list:
    """Generators of ``<gens> : form^inf`` for homogeneous integer ``gens``."""
    work = gens
    if form.w is not None and form.c:
        work = [_shift(t, form.v, form.w, form.c) for t in work]
    order = [i for i in range(nvars) if i != form.v] + [form.v]
    work = [_permute(t, order) for t in work]
    basis = _groebner_terms(work, nvars, budget)
    out = []
    for t in basis:
        k = min(m[-1] for m in t)
        if k:
            t = {m[:-1] + (m[-1] - k,): c for m, c in t.items()}
        out.append(t)
    inv = _inverse(order)
    out = [_permute(t, inv) for t in out]
    if form.w is not None and form.c:
        out = [_shift(t, form.v, form.w, -form.c) for t in out]
    return out


def _is_unit_terms(t: dict, affine: bool) -> bool:
    if len(t) != 1:
        return False
    m = next(iter(t))
    if sum(m) == 0:
        return True
    # a pure power of the homogenizing variable is a unit after dehomogenizing
    return affine and sum(m) == m[-1]


def saturate(
    gens: Sequence[Poly],
    forms: Sequence[LinearForm],
    budget: GroebnerBudget = DEFAULT_BUDGET,
) -> list:
    """Generators of ``<gens> : (prod forms)^inf`` for affine ``gens``.

    Forms use the homogenized coordinates (see :func:`saturation_is_trivial`).
    Returns ``[1]`` for the unit ideal.
    """
    if not gens:
        return []
    nvars = gens[0].nvars
    work = [integer_terms(p.terms) for p in gens if not p.is_zero()]
    one = [Poly.const(1, nvars)]
    if any(_is_unit_terms(t, False) for t in work):
        return one
    work = [homogenize(t, nvars) for t in work]
    for form in list(forms) + [LinearForm(nvars)]:
        work = saturate_by_form(work, nvars + 1, form, budget)
        if any(_is_unit_terms(t, True) for t in work):
            return one
    out = []
    for t in work:
        d: dict = {}
        for m, c in t.items():
            d[m[:-1]] = d.get(m[:-1], 0) + c
        d = {m: c for m, c in d.items() if c}
        if d:
            out.append(Poly(d, nvars))
    return out


def saturation_is_trivial(
    gens: Sequence[Poly],
    forms: Sequence[LinearForm],
    homogeneous: bool = False,
    budget: GroebnerBudget = DEFAULT_BUDGET,
) -> bool:
    """True iff ``<gens> : (prod forms)^inf`` is the unit ideal.

    ``forms`` refer to the homogenized coordinates: when ``homogeneous`` is
    False a homogenizing variable is appended at index ``nvars`` and a
    dehomogenized factor such as ``x_i - 1`` is written
    ``LinearForm(i, nvars, 1)``.  Raises ``BudgetExhausted`` on overrun.
    """
    if not gens:
        return False
    nvars = gens[0].nvars
    work = [integer_terms(p.terms) for p in gens if not p.is_zero()]
    if any(len(t) == 1 and sum(next(iter(t))) == 0 for t in work):
        return True
    if not homogeneous:
        work = [homogenize(t, nvars) for t in work]
        total = nvars + 1
        forms = list(forms) + [LinearForm(nvars)]
    else:
        total = nvars
    for form in forms:
        work = saturate_by_form(work, total, form, budget)
        if any(len(t) == 1 and sum(next(iter(t))) == 0 for t in work):
            return True
        if not homogeneous and any(len(t) == 1 and sum(next(iter(t))) == next(iter(t))[-1] for t in work):
            # a pure power of the homogenizing variable: unit after dehomogenizing
            return True
    return False
