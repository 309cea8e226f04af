"""Sparse multivariate polynomials over Q.

A polynomial is a mapping from exponent tuples to nonzero ``Fraction``
coefficients.  Variable 0 is the largest variable in every monomial order,
so ``x_1 > ... > x_s > u`` is obtained by listing the color variables first
and the saturation variable last.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

GREVLEX = "grevlex"
LEX = "lex"
ORDERS = (GREVLEX, LEX)


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex_key(e):
    return e


def order_key(order: str):
    """Sort key for exponent tuples: larger key means larger monomial."""
    if order == GREVLEX:
        return _grevlex_key
    if order == LEX:
        return _lex_key
    raise ValueError(f"unknown monomial order {order!r}")


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b, a):
    for x, y in zip(b, a):
        if x > y:
            return False
    return True


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object], nvars: int):
        clean = {}
        for m, c in terms.items():
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} slots")
            if c:
                clean[tuple(m)] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls({}, nvars)

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def from_univariate(cls, coeffs: Sequence, var: int, nvars: int) -> "Poly":
        """Coefficients listed from degree 0 upwards."""
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * nvars
                e[var] = k
                terms[tuple(e)] = c
        return cls(terms, nvars)

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        used = set()
        for m in self.terms:
            used.update(i for i, x in enumerate(m) if x)
        return used

    def sorted_terms(self, order: str = GREVLEX):
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: str = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order_key(order)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def leading_monomial(self, order: str = GREVLEX):
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: str = GREVLEX) -> Fraction:
        return self.leading_term(order)[1]

    # arithmetic

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Poly(t, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly({m: v * c for m, v in self.terms.items()}, self.nvars)
        self._check(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Poly(t, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if not self.terms:
            return other == 0
        return self.is_constant() and self.terms.get((0,) * self.nvars) == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # evaluation and substitution

    def evaluate(self, point: Sequence):
        """Evaluate at a point whose entries support ring arithmetic."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, k in zip(point, m):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def substitute(self, var: int, value) -> "Poly":
        """Replace variable ``var`` by a rational constant (arity unchanged)."""
        value = Fraction(value)
        t: dict = {}
        for m, c in self.terms.items():
            k = m[var]
            mm = m[:var] + (0,) + m[var + 1:]
            t[mm] = t.get(mm, 0) + c * value**k
        return Poly(t, self.nvars)

    def univariate_coeffs(self, var: int) -> list:
        """Coefficients (low to high) if the polynomial only involves ``var``."""
        if self.variables() - {var}:
            raise ValueError("polynomial is not univariate in the given variable")
        deg = max((m[var] for m in self.terms), default=0)
        out = [Fraction(0)] * (deg + 1)
        for m, c in self.terms.items():
            out[m[var]] = c
        return out

    def content_free(self, order: str = GREVLEX) -> "Poly":
        """Scalar multiple with coprime integer coefficients, positive leading term."""
        if not self.terms:
            return self
        ints = integer_terms(self.terms)
        lc = ints[max(ints, key=order_key(order))]
        if lc < 0:
            ints = {m: -c for m, c in ints.items()}
        return Poly(ints, self.nvars)

    def monic(self, order: str = GREVLEX) -> "Poly":
        lc = self.leading_coefficient(order)
        return self * (1 / lc)

    def __repr__(self):
        return f"Poly({self.to_str()})"

    def to_str(self, names: Sequence[str] | None = None, order: str = GREVLEX) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, m) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def integer_terms(terms: Mapping[tuple, Fraction]) -> dict:
    """Scale a rational coefficient map to coprime integers."""
    den = 1
    for c in terms.values():
        d = c.denominator
        den = den * d // gcd(den, d)
    out = {m: int(c * den) for m, c in terms.items()}
    g = 0
    for c in out.values():
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        out = {m: c // g for m, c in out.items()}
    return out


def poly_from_expr(expr: str, names: Sequence[str]) -> Poly:
    """Parse a polynomial expression via sympy (test and fixture helper)."""
    import sympy

    syms = sympy.symbols(list(names))
    p = sympy.Poly(sympy.sympify(expr, locals=dict(zip(names, syms))), *syms)
    terms = {m: Fraction(int(c.p), int(c.q)) for m, c in p.terms()}
    return Poly(terms, len(names))


def polys_arity(polys: Iterable[Poly]) -> int:
    arities = {p.nvars for p in polys}
    if len(arities) != 1:
        raise ValueError(f"arity mismatch among polynomials: {sorted(arities)}")
    return arities.pop()
