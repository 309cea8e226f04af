"""Named candidate Gram matrices with known parameter values.

Each pattern is a list of rows of letters; ``1`` marks the diagonal.  Letters
are mapped to color indices in first-occurrence order of the vectorization
(see :meth:`CandidateGramMatrix.from_letters`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .gramgen import CandidateGramMatrix

S12A = [
    "1uuuuuvvvvvw",
    "u1uuvvuuvvwv",
    "uu1vuvuvuwvv",
    "uuv1vuvuwuvv",
    "uvuv1uvwuvuv",
    "uvvuu1wvvuuv",
    "vuuvvw1uuvvu",
    "vuvuwvu1vuvu",
    "vvuwuvuv1vuu",
    "vvwuvuvuv1uu",
    "vwvvuuvvuu1u",
    "wvvvvvuuuuu1",
]

S12B = [
    "1uuuvvvvwwxx",
    "u1uvuvwxvxvw",
    "uu1vvuxwxvwv",
    "uvv1wwuuvvxx",
    "vuvw1wvxuxuv",
    "vvuww1xvxuvu",
    "vwxuvx1uuvvw",
    "vxwuxvu1vuwv",
    "wvxvuxuv1wuv",
    "wxvvxuvuw1vu",
    "xvwxuvvwuv1u",
    "xwvxvuwvvuu1",
]

S12C = [
    "1uuuuvvwwwwx",
    "u1uvwuwuvwxw",
    "uu1wvwuvuxww",
    "uvw1uuwwxuvw",
    "uwvu1wuxwvuw",
    "vuwuw1xuwuwv",
    "vwuwux1wuwuv",
    "wuvwxuw1uvwu",
    "wvuxwwuu1wvu",
    "wwxuvuwvw1uu",
    "wxwvuwuwvu1u",
    "xwwwwvvuuuu1",
]

S13C = [
    "1uuuuvvvvwwww",
    "u1vvwuuvwuvww",
    "uv1wvuwuvvwuw",
    "uvw1vvuwuwuwv",
    "uwvv1wvuuwwvu",
    "vuuvw1wwuvuvw",
    "vuwuvw1uwvvwu",
    "vvuwuwu1wuwvv",
    "vwvuuuww1wvuv",
    "wuvwwvvuw1uuv",
    "wvwuwuvwvu1vu",
    "wwuwvvwvuuv1u",
    "wwwvuwuvvvuu1",
]

G16 = [
    "1uuuuuuuuuuuuvvv",
    "u1uuuuuuuuvvvuuu",
    "uu1uuuvvvwuuuuuu",
    "uuu1vvuuwvuuwuuw",
    "uuuv1vuwuvuwuuwu",
    "uuuvv1wuuvwuuwuu",
    "uuvuuw1vvuuwwuww",
    "uuvuwuv1vuwuwwuw",
    "uuvwuuvv1uwwuwwu",
    "uuwvvvuuu1wwwwww",
    "uvuuuwuwww1vvuww",
    "uvuuwuwuwwv1vwuw",
    "uvuwuuwwuwvv1wwu",
    "vuuuuwuwwwuww1vv",
    "vuuuwuwuwwwuwv1v",
    "vuuwuuwwuwwwuvv1",
]

G13C = [
    "1uuuuuuuuuuuu",
    "u1uuvvwxxyyzz",
    "uu1vuwvxyxzyz",
    "uuv1wuvyxzxzy",
    "uvuw1vuyzxzxy",
    "uvwuv1uzyzxyx",
    "uwvvuu1zzyyxx",
    "uxxyyzz1uuvvw",
    "uxyxzyzu1vuwv",
    "uyxzxzyuv1wuv",
    "uyzxzxyvuw1vu",
    "uzyzxyxvwuv1u",
    "uzzyyxxwvvuu1",
]

G13D = [
    "1uuvvwwxxyyzz",
    "u1vuwvxwyxzyz",
    "uv1wuxvywzxzy",
    "vuw1xuyvzwzxy",
    "vwux1yuzvzwyx",
    "wvxuy1zuzvywx",
    "wxvyuz1zuyvxw",
    "xwyvzuz1yuxvw",
    "xywzvzuy1xuwv",
    "yxzwzvyux1wuv",
    "yzxzwyvxuw1vu",
    "zyzxywxvwuv1u",
    "zzyyxxwwvvuu1",
]

G13E = [
    "1uuuuuuvvvvvv",
    "u1uuvvwuuwwxx",
    "uu1vuwvuwuxwx",
    "uuv1wuvwuxuxw",
    "uvuw1vuwxuxuw",
    "uvwuv1uxwxuwu",
    "uwvvuu1xxwwuu",
    "vuuwwxx1vvyyz",
    "vuwuxwxv1yvzy",
    "vwuxuxwvy1zvy",
    "vwxuxuwyvz1yv",
    "vxwxuwuyzvy1v",
    "vxxwwuuzyyvv1",
]


def bordered_below(core: list[str], letter: str) -> list[str]:
    """[[core, letter*J], [letter*J^T, 1]]"""
    rows = [r + letter for r in core]
    rows.append(letter * len(core) + "1")
    return rows


def bordered_above(core: list[str], letter: str) -> list[str]:
    """[[1, letter*J^T], [letter*J, core]]"""
    rows = ["1" + letter * len(core)]
    rows.extend(letter + r for r in core)
    return rows


S13A = bordered_below(S12A, "w")
S13B = bordered_above(S12A, "u")
G13A = bordered_below(S12A, "x")


# G_13B(u,v,w,x) = [[1, uJ^T], [uJ, S_12C(u,v,w,x)]]
G13B = bordered_above(S12C, "u")

PATTERNS = {
    "S12A": S12A,
    "S12B": S12B,
    "S12C": S12C,
    "S13A": S13A,
    "S13B": S13B,
    "S13C": S13C,
    "G13A": G13A,
    "G13B": G13B,
    "G16": G16,
    "G13C": G13C,
    "G13D": G13D,
    "G13E": G13E,
}


@dataclass(frozen=True)
class Fixture:
    """A pattern plus parameter values (letter -> exact value) and geometry."""

    name: str
    pattern: str
    mode: str
    dim: int
    values: dict = field(default_factory=dict)
    expected_rank: int | None = None

    def matrix(self):
        """``(candidate matrix, letter -> color)`` for the pattern."""
        return CandidateGramMatrix.from_letters(PATTERNS[self.pattern])

    def color_values(self) -> list:
        """Values indexed by color."""
        _, mapping = self.matrix()
        vals = [None] * len(mapping)
        for letter, c in mapping.items():
            vals[c] = self.values[letter]
        return vals

    def certify(self, reconstruct: bool = True):
        from .geomcert import certify

        g, _ = self.matrix()
        return certify(g, self.color_values(), self.dim, self.mode, reconstruct=reconstruct)


def sqrt5_field():
    """Q(sqrt 5) with the positive root selected."""
    from .exactmath.algebraic import AlgebraicNumber, NumberField

    return NumberField(AlgebraicNumber([-5, 0, 1], 2, 3))


def fixtures() -> dict:
    """The named configurations with the parameter values quoted in the literature."""
    K = sqrt5_field()
    r5 = K.gen()
    F = Fraction
    out = {}

    def add(fx):
        out[fx.name] = fx

    add(Fixture("S12A", "S12A", "spherical", 3, {"u": 1 / r5, "v": -1 / r5, "w": F(-1)}, 3))
    add(Fixture("S12B", "S12B", "spherical", 3,
                {"u": F(7, 11), "v": F(-1, 11), "w": F(-5, 11), "x": F(-9, 11)}, 3))
    add(Fixture("S12C", "S12C", "spherical", 3,
                {"u": F(1, 2), "v": F(0), "w": F(-1, 2), "x": F(-1)}, 3))
    for tag, sgn in (("plus", 1), ("minus", -1)):
        u = (1 + sgn * r5) / 4
        add(Fixture(f"S13B_{tag}", "S13B", "spherical", 4,
                    {"u": u, "v": F(1, 2), "w": u - F(1, 2)}, 4))
    u = (5 + 3 * r5) / 20
    add(Fixture("S13A", "S13A", "spherical", 4, {"u": u, "v": F(1, 2) - u, "w": F(-1, 2)}, 4))
    add(Fixture("G16", "G16", "general", 4, {"u": F(1), "v": F(2), "w": F(3)}, 4))
    u = 2 * (5 + r5) / 5
    add(Fixture("G13A", "G13A", "general", 3, {"u": u, "v": 4 - u, "w": F(4), "x": F(1)}, 3))
    u = F(1, 4)
    add(Fixture("G13B", "G13B", "general", 3, {"u": u, "v": F(1, 2), "w": 1 - u, "x": F(1)}, 3))
    add(Fixture("G13E", "G13E", "general", 2,
                {"u": F(1), "v": F(3), "w": F(4), "x": F(7), "y": F(9), "z": F(12)}, 2))
    return out
