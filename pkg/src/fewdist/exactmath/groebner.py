"""Buchberger's algorithm over Q with fraction-free integer coefficients.

Every polynomial handled internally is a dict ``{exponent: int}`` kept
primitive (content 1) after each reduction; this is what keeps the
coefficients of determinantal generators under control.  Pairs are selected
by the sugar strategy and pruned with the Gebauer-Moeller criteria.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .poly import (
    GREVLEX,
    LEX,
    Poly,
    integer_terms,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    order_key,
    polys_arity,
)


class BudgetExhausted(Exception):
    """Raised when a Groebner computation exceeds its resource cap.

    This is never a mathematical answer; callers must treat the ideal as
    undecided.
    """


@dataclass(frozen=True)
class GroebnerBudget:
    max_basis: int = 400
    max_degree: int = 40
    max_pairs: int = 200_000


DEFAULT_BUDGET = GroebnerBudget()


def _neg_grevlex(e):
    return (-sum(e), e[::-1])


def _neg_lex(e):
    return tuple(-x for x in e)


# keys whose ascending order is the descending monomial order (heap pops largest)
_NEG_KEYS = {order_key(GREVLEX): _neg_grevlex, order_key(LEX): _neg_lex}


def _content(terms: dict) -> int:
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


class _Entry:
    __slots__ = ("lm", "lc", "terms", "sugar", "deg")

    def __init__(self, terms, key, sugar=None):
        lm = max(terms, key=key)
        lc = terms[lm]
        if lc < 0:
            terms = {m: -c for m, c in terms.items()}
            lc = -lc
        self.terms = terms
        self.lm = lm
        self.lc = lc
        self.deg = max(sum(m) for m in terms)
        self.sugar = self.deg if sugar is None else max(sugar, self.deg)


def _normal_form(f: dict, basis: Sequence[_Entry], key, full: bool = True):
    """Pseudo-reduce ``f`` modulo ``basis``.

    Returns ``(r, scale)`` with ``scale * f - r`` in the ideal, ``scale`` a
    nonzero Fraction, and ``r`` primitive.  With ``full=False`` only the
    leading term is reduced (top reduction).
    """
    f = dict(f)
    r: dict = {}
    scale = Fraction(1)
    nkey = _NEG_KEYS[key]
    heap = [(nkey(m), m) for m in f]
    heapq.heapify(heap)
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = f.get(m)
        if c is None:
            continue
        for g in basis:
            if mono_divides(g.lm, m):
                break
        else:
            del f[m]
            r[m] = c
            if not full:
                r.update(f)
                f = {}
                break
            continue
        q = mono_div(m, g.lm)
        a, b = g.lc, c
        h = gcd(a, b)
        a //= h
        b //= h
        if a != 1:
            for k in f:
                f[k] *= a
            for k in r:
                r[k] *= a
            scale *= a
        for mg, cg in g.terms.items():
            mm = mono_mul(mg, q)
            old = f.get(mm)
            if old is None:
                f[mm] = -b * cg
                heapq.heappush(heap, (nkey(mm), mm))
            else:
                v = old - b * cg
                if v:
                    f[mm] = v
                else:
                    del f[mm]
        steps += 1
        if steps % 8 == 0:
            cont = gcd(_content(f), _content(r)) if (f or r) else 1
            if cont > 1:
                f = {k: v // cont for k, v in f.items()}
                r = {k: v // cont for k, v in r.items()}
                scale /= cont
    if r:
        cont = _content(r)
        if cont > 1:
            r = {k: v // cont for k, v in r.items()}
            scale /= cont
    return r, scale


def _to_int_terms(p: Poly) -> dict:
    return integer_terms(p.terms)


class GroebnerEngine:
    """Incremental Buchberger engine.

    Generators may be added in batches with :meth:`add`; after
    :meth:`complete` the active polynomials form a Groebner basis of
    everything added so far.  ``is_unit`` turns true as soon as a nonzero
    constant is found.
    """

    def __init__(self, nvars: int, order: str = GREVLEX, budget: GroebnerBudget = DEFAULT_BUDGET):
        self.nvars = nvars
        self.order = order
        self.key = order_key(order)
        self.budget = budget
        self.polys: list[_Entry] = []
        self.active: list[int] = []
        self.pairs: list = []
        self.is_unit = False
        self._pair_count = 0

    # public API

    def add(self, gens: Iterable[Poly]) -> None:
        for p in gens:
            if p.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {p.nvars} vs {self.nvars}")
            if self.is_unit or p.is_zero():
                continue
            self._insert_reduced(_to_int_terms(p), None)

    def complete(self) -> None:
        key = self.key
        while self.pairs and not self.is_unit:
            _, _, i, j = heapq.heappop(self.pairs)
            self._pair_count += 1
            if self._pair_count > self.budget.max_pairs:
                raise BudgetExhausted(f"more than {self.budget.max_pairs} S-pairs")
            gi, gj = self.polys[i], self.polys[j]
            s, sugar = self._spoly(gi, gj)
            if not s:
                continue
            basis = [self.polys[k] for k in self.active]
            r, _ = _normal_form(s, basis, key)
            if r:
                self._add_entry(_Entry(r, key, sugar))

    def contains(self, p: Poly) -> bool:
        """Ideal membership; valid once :meth:`complete` has run."""
        if self.is_unit:
            return True
        if p.is_zero():
            return True
        r, _ = _normal_form(_to_int_terms(p), self._basis(), self.key)
        return not r

    def normal_form(self, p: Poly) -> Poly:
        if p.is_zero():
            return p
        if self.is_unit:
            return Poly.zero(self.nvars)
        f = integer_terms(p.terms)
        mult = Fraction(f[next(iter(f))]) / p.terms[next(iter(f))]
        r, scale = _normal_form(f, self._basis(), self.key)
        total = scale * mult
        return Poly({m: Fraction(c) / total for m, c in r.items()}, self.nvars)

    def reduced_basis(self) -> list[Poly]:
        """Monic reduced Groebner basis, sorted by decreasing leading monomial."""
        if self.is_unit:
            return [Poly.const(1, self.nvars)]
        key = self.key
        entries = self._basis()
        # minimal basis: drop elements whose leading monomial is divisible by another
        entries.sort(key=lambda e: key(e.lm))
        minimal: list[_Entry] = []
        for e in entries:
            if not any(mono_divides(g.lm, e.lm) for g in minimal):
                minimal.append(e)
        out = []
        for i, e in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1:]
            tail = dict(e.terms)
            lead = {e.lm: tail.pop(e.lm)}
            r, scale = _normal_form(tail, others, key) if tail else ({}, Fraction(1))
            # e ~ lead + tail, tail ~ r / scale modulo the others
            terms = {e.lm: Fraction(lead[e.lm])}
            for m, c in r.items():
                terms[m] = Fraction(c) / scale
            p = Poly(terms, self.nvars)
            out.append(p.monic(self.order))
        out.sort(key=lambda p: key(p.leading_monomial(self.order)), reverse=True)
        return out

    # internals

    def _basis(self) -> list[_Entry]:
        return [self.polys[k] for k in self.active]

    def _insert_reduced(self, terms: dict, sugar):
        r, _ = _normal_form(terms, self._basis(), self.key)
        if r:
            self._add_entry(_Entry(r, self.key, sugar))

    def _spoly(self, f: _Entry, g: _Entry):
        L = mono_lcm(f.lm, g.lm)
        qf = mono_div(L, f.lm)
        qg = mono_div(L, g.lm)
        h = gcd(f.lc, g.lc)
        a, b = g.lc // h, f.lc // h
        out: dict = {}
        for m, c in f.terms.items():
            if m == f.lm:
                continue
            out[mono_mul(m, qf)] = a * c
        for m, c in g.terms.items():
            if m == g.lm:
                continue
            mm = mono_mul(m, qg)
            v = out.get(mm, 0) - b * c
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        sugar = max(f.sugar + sum(qf), g.sugar + sum(qg))
        return out, sugar

    def _add_entry(self, h: _Entry):
        if h.deg == 0:
            self.is_unit = True
            self.polys.append(h)
            self.active = [len(self.polys) - 1]
            self.pairs = []
            return
        if h.deg > self.budget.max_degree:
            raise BudgetExhausted(f"degree {h.deg} exceeds cap {self.budget.max_degree}")
        if len(self.polys) >= self.budget.max_basis:
            raise BudgetExhausted(f"basis size exceeds cap {self.budget.max_basis}")
        hi = len(self.polys)
        self.polys.append(h)
        self._gebauer_moeller(hi)

    def _gebauer_moeller(self, hi: int):
        polys = self.polys
        h = polys[hi]
        hlm = h.lm
        key = self.key

        def coprime(a, b):
            return all(x == 0 or y == 0 for x, y in zip(a, b))

        # candidate new pairs (g, h)
        cands = [(mono_lcm(polys[g].lm, hlm), g) for g in self.active]
        kept = []
        for idx, (L, g) in enumerate(cands):
            if coprime(polys[g].lm, hlm):
                kept.append((L, g, True))
                continue
            dominated = False
            for jdx, (L2, g2) in enumerate(cands):
                if jdx == idx:
                    continue
                if mono_divides(L2, L) and (L2 != L or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                kept.append((L, g, False))
        new_pairs = [(L, g) for L, g, cop in kept if not cop]
        # old pairs survive unless h's leading monomial strictly "covers" them
        old = []
        for entry in self.pairs:
            _, _, i, j = entry
            L = mono_lcm(polys[i].lm, polys[j].lm)
            if (
                mono_divides(hlm, L)
                and mono_lcm(polys[i].lm, hlm) != L
                and mono_lcm(polys[j].lm, hlm) != L
            ):
                continue
            old.append(entry)
        for L, g in new_pairs:
            gpoly = polys[g]
            sugar = max(gpoly.sugar + sum(L) - sum(gpoly.lm), h.sugar + sum(L) - sum(hlm))
            old.append((sugar, key(L), g, hi))
        heapq.heapify(old)
        self.pairs = old
        self.active = [g for g in self.active if not mono_divides(hlm, polys[g].lm)] + [hi]


def groebner_reduced(
    gens: Sequence[Poly], order: str = GREVLEX, budget: GroebnerBudget = DEFAULT_BUDGET
) -> list[Poly]:
    """Unique monic reduced Groebner basis of the ideal generated by ``gens``.

    Raises :class:`BudgetExhausted` when the cap is hit.
    """
    if not gens:
        raise ValueError("need at least one generator")
    n = polys_arity(gens)
    eng = GroebnerEngine(n, order, budget)
    eng.add(gens)
    eng.complete()
    if not eng.active:
        return [Poly.zero(n)]
    return eng.reduced_basis()


def poly_reduce(f: Poly, basis: Sequence[Poly], order: str = GREVLEX) -> Poly:
    """Normal form of ``f`` modulo ``basis`` (a remainder of multivariate division).

    ``f - r`` lies in the ideal and no term of ``r`` is divisible by a leading
    term of ``basis``.
    """
    for b in basis:
        if b.nvars != f.nvars:
            raise ValueError(f"arity mismatch: {b.nvars} vs {f.nvars}")
        if b.is_zero():
            raise ValueError("basis elements must be nonzero")
    if f.is_zero():
        return f
    key = order_key(order)
    entries = [_Entry(_to_int_terms(b), key) for b in basis]
    ints = integer_terms(f.terms)
    m0 = next(iter(ints))
    mult = Fraction(ints[m0]) / f.terms[m0]
    r, scale = _normal_form(ints, entries, key)
    total = scale * mult
    return Poly({m: Fraction(c) / total for m, c in r.items()}, f.nvars)


def ideal_is_trivial(gens: Sequence[Poly], order: str = GREVLEX, budget: GroebnerBudget = DEFAULT_BUDGET):
    """True iff 1 is in the ideal; None when the budget ran out."""
    n = polys_arity(gens)
    eng = GroebnerEngine(n, order, budget)
    try:
        eng.add(gens)
        eng.complete()
    except BudgetExhausted:
        return None
    return eng.is_unit
