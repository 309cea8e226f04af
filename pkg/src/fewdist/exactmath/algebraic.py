"""Real algebraic numbers and arithmetic in simple extensions Q(theta).

An :class:`AlgebraicNumber` is an irreducible minimal polynomial together
with an isolating interval.  Elements of ``Q(theta)`` are polynomials in
``theta`` reduced modulo its minimal polynomial; their signs are decided
exactly with :func:`algebraic_sign`, never by floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Sequence

from . import univariate as up


def _as_coeffs(expr) -> list:
    from .poly import Poly

    if isinstance(expr, Poly):
        used = expr.variables()
        if len(used) > 1:
            raise ValueError("expression must be univariate")
        var = used.pop() if used else 0
        return expr.univariate_coeffs(var)
    if isinstance(expr, (int, Fraction)):
        return up.trim([expr])
    return up.trim(expr)


def is_irreducible(coeffs: Sequence) -> bool:
    import sympy

    t = sympy.Symbol("t")
    p = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in up.trim(coeffs)])), t)
    return p.is_irreducible


def rational_factors(coeffs: Sequence) -> list:
    """Irreducible monic factors over Q (without multiplicity)."""
    import sympy

    t = sympy.Symbol("t")
    p = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in up.trim(coeffs)])), t)
    out = []
    for f, _ in p.factor_list()[1]:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append(up.monic(cs))
    return out


class AlgebraicNumber:
    """A real root of an irreducible polynomial, isolated by ``[lo, hi]``."""

    __slots__ = ("min_poly", "lo", "hi", "_seq")

    def __init__(self, min_poly: Sequence, lo, hi, check_irreducible: bool = True):
        p = up.monic(up.trim(min_poly))
        if len(p) < 2:
            raise ValueError("minimal polynomial must have positive degree")
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty isolating interval")
        if check_irreducible and len(p) > 2 and not is_irreducible(p):
            raise ValueError("minimal polynomial is reducible over Q")
        seq = up.sturm_sequence(p)
        if lo == hi:
            if up.evaluate(p, lo) != 0:
                raise ValueError("degenerate interval is not a root")
        else:
            if up.evaluate(p, lo) == 0 or up.evaluate(p, hi) == 0:
                raise ValueError("interval endpoints must not be roots")
            if up.count_roots(p, lo, hi, seq) != 1:
                raise ValueError("interval does not isolate exactly one root")
        self.min_poly = tuple(p)
        self.lo = lo
        self.hi = hi
        self._seq = seq

    @classmethod
    def rational(cls, r) -> "AlgebraicNumber":
        r = Fraction(r)
        return cls([-r, 1], r, r, check_irreducible=False)

    @classmethod
    def real_roots(cls, coeffs: Sequence) -> list:
        """All real roots of a rational polynomial, ascending."""
        roots = []
        for f in rational_factors(coeffs):
            for lo, hi in up.isolate_real_roots(f):
                roots.append(cls(f, lo, hi, check_irreducible=False))
        roots.sort(key=lambda a: a.midpoint())
        # distinct irreducible factors share no roots, but their intervals may overlap
        return sorted(roots, key=_SortByValue)

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return -self.min_poly[0]

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def width(self) -> Fraction:
        return self.hi - self.lo

    def bisect(self) -> "AlgebraicNumber":
        """Halve the isolating interval."""
        if self.lo == self.hi:
            return self
        p = self.min_poly
        mid = self.midpoint()
        v = up.evaluate(p, mid)
        if v == 0:
            return AlgebraicNumber(p, mid, mid, check_irreducible=False)
        if up.sign(v) == up.sign(up.evaluate(p, self.lo)):
            lo, hi = mid, self.hi
        else:
            lo, hi = self.lo, mid
        out = object.__new__(AlgebraicNumber)
        out.min_poly, out.lo, out.hi, out._seq = p, lo, hi, self._seq
        return out

    def refine(self, width) -> "AlgebraicNumber":
        a = self
        width = Fraction(width)
        while a.hi - a.lo > width:
            a = a.bisect()
        return a

    def __float__(self):
        return float(self.refine(Fraction(1, 2**60)).midpoint())

    def __eq__(self, other):
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        if self.min_poly != other.min_poly:
            return False
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return False
        if lo == hi:
            return up.evaluate(self.min_poly, lo) == 0
        return up.count_roots(self.min_poly, lo, hi, self._seq) == 1 or up.evaluate(self.min_poly, lo) == 0

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        if self.is_rational():
            return f"AlgebraicNumber({self.as_fraction()})"
        return f"AlgebraicNumber(min_poly={poly_str(self.min_poly)}, interval=[{self.lo}, {self.hi}])"


def _cmp_algebraic(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    if a == b:
        return 0
    while True:
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        a, b = a.bisect(), b.bisect()


class _SortByValue:
    __slots__ = ("a",)

    def __init__(self, a):
        self.a = a

    def __lt__(self, other):
        return _cmp_algebraic(self.a, other.a) < 0


def poly_str(coeffs: Sequence, var: str = "t") -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def algebraic_sign(a: AlgebraicNumber, expr) -> int:
    """Exact sign of ``expr(a)`` for a univariate rational polynomial ``expr``."""
    e = up.rem(_as_coeffs(expr), list(a.min_poly))
    if not e:
        return 0
    if a.lo == a.hi:
        return up.sign(up.evaluate(e, a.lo))
    g = up.gcd(list(a.min_poly), e)
    if len(g) > 1 and up.count_roots(g, a.lo, a.hi) + (up.evaluate(g, a.lo) == 0) > 0:
        return 0
    seq = up.sturm_sequence(up.squarefree_part(e))
    while True:
        v = up.evaluate(e, a.lo)
        if v != 0 and up.count_roots(e, a.lo, a.hi, seq) == 0:
            return up.sign(v)
        a = a.bisect()
        if a.lo == a.hi:
            return up.sign(up.evaluate(e, a.lo))


class NumberField:
    """The real field Q(theta) for an algebraic number theta."""

    def __init__(self, theta: AlgebraicNumber):
        self.theta = theta
        self.modulus = list(theta.min_poly)
        self.degree = theta.degree

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.theta == other.theta

    def __hash__(self):
        return hash(self.theta)

    def element(self, coeffs) -> "FieldElement":
        return FieldElement(self, coeffs)

    def gen(self) -> "FieldElement":
        return FieldElement(self, [0, 1])

    def __repr__(self):
        return f"NumberField({self.theta!r})"


@total_ordering
class FieldElement:
    """An element of Q(theta), stored as a reduced polynomial in theta."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.coeffs = tuple(up.rem(up.trim(coeffs), field.modulus))

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [Fraction(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, up.add(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, up.sub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, up.mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero in number field")
        # extended Euclid: s*a + t*m = 1
        r0, r1 = list(self.field.modulus), list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = up.divmod_(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, up.sub(s0, up.mul(q, s1))
        if len(r0) != 1:
            raise ZeroDivisionError("modulus is not irreducible")
        return FieldElement(self.field, up.scale(s0, 1 / r0[0]))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = FieldElement(self.field, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sign(self) -> int:
        if not self.coeffs:
            return 0
        if len(self.coeffs) == 1:
            return up.sign(self.coeffs[0])
        return algebraic_sign(self.field.theta, list(self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, FieldElement) else other
        if o is NotImplemented:
            return False
        return self.field == o.field and self.coeffs == o.coeffs

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.field.theta.min_poly, self.coeffs))

    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def enclosure(self, width=Fraction(1, 10**12)):
        """Rational bounds ``(lo, hi)`` with ``hi - lo <= width`` around the value."""
        width = Fraction(width)
        if self.is_rational():
            v = self.as_fraction()
            return v, v
        theta = self.field.theta
        w = max(theta.width(), Fraction(1))
        while True:
            theta = theta.refine(w)
            lo, hi = _interval_eval(self.coeffs, theta.lo, theta.hi)
            if hi - lo <= width:
                return lo, hi
            w /= 16

    def __float__(self):
        lo, hi = self.enclosure(Fraction(1, 2**60))
        return float((lo + hi) / 2)

    def minimal_polynomial(self) -> list:
        """Monic minimal polynomial over Q (coefficients low to high)."""
        if self.is_rational():
            return [-self.as_fraction(), Fraction(1)]
        n = self.field.degree
        # matrix of multiplication by self on the power basis
        cols = []
        for k in range(n):
            img = up.rem(up.mul(self.coeffs, [0] * k + [1]), self.field.modulus)
            cols.append([img[i] if i < len(img) else Fraction(0) for i in range(n)])
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        from .linalg import charpoly

        char = list(reversed(charpoly(mat)))
        for f in rational_factors(char):
            if not up.compose_mod(f, list(self.coeffs), self.field.modulus):
                return f
        raise ArithmeticError("no factor of the characteristic polynomial vanishes")

    def to_algebraic(self) -> AlgebraicNumber:
        """Minimal polynomial with an isolating interval for this value."""
        f = self.minimal_polynomial()
        if len(f) == 2:
            return AlgebraicNumber.rational(-f[0])
        seq = up.sturm_sequence(f)
        width = Fraction(1)
        while True:
            lo, hi = self.enclosure(width)
            if (
                up.evaluate(f, lo) != 0
                and up.evaluate(f, hi) != 0
                and up.count_roots(f, lo, hi, seq) == 1
            ):
                return AlgebraicNumber(f, lo, hi, check_irreducible=False)
            width /= 16

    def __repr__(self):
        if self.is_rational():
            return str(self.as_fraction())
        return f"[{poly_str(self.coeffs, 'a')} : {poly_str(self.field.modulus, 'a')} = 0]"


def _interval_eval(coeffs, lo, hi):
    """Interval Horner evaluation of a polynomial over [lo, hi]."""
    alo = ahi = Fraction(0)
    for c in reversed(coeffs):
        prods = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(prods) + c, max(prods) + c
    return alo, ahi


def sign(x) -> int:
    """Exact sign of a rational or a number-field element."""
    if isinstance(x, FieldElement):
        return x.sign()
    return up.sign(x)
