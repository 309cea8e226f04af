"""Isomorph-free generation of candidate Gram matrices.

A candidate Gram matrix of order n is an edge coloring of K_n with at most s
colors; two are equivalent under simultaneous vertex permutation and color
renaming.  The canonical representative is the coloring whose vectorization
``[G21, G31, G32, G41, ...]`` (colors renamed by first occurrence) is
lexicographically smallest.  Children are produced by orderly generation:
append one row in every way and keep the canonical results.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

DIGITS = string.digits + string.ascii_lowercase

CanonicalKey = bytes


def tri_index(i: int, j: int) -> int:
    """Position of entry (i, j), i != j, in the lower-triangular vectorization."""
    if i < j:
        i, j = j, i
    return i * (i - 1) // 2 + j


def first_occurrence(seq: Iterable[int]) -> bytes:
    """Rename colors so they appear as 0, 1, 2, ... in order of first use."""
    ren: dict = {}
    out = []
    for c in seq:
        lab = ren.get(c)
        if lab is None:
            lab = ren[c] = len(ren)
        out.append(lab)
    return bytes(out)


@dataclass(frozen=True)
class CandidateGramMatrix:
    """Symbolic Gram matrix: unit diagonal, off-diagonal color indices 0..s-1."""

    n: int
    s: int
    colors: bytes

    def __post_init__(self):
        if len(self.colors) != self.n * (self.n - 1) // 2:
            raise ValueError("vectorization length does not match the order")
        if self.colors != first_occurrence(self.colors):
            raise ValueError("colors must be numbered by first occurrence")
        if self.colors and max(self.colors) >= self.s:
            raise ValueError(f"more than s={self.s} colors used")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], s: int) -> "CandidateGramMatrix":
        n = len(rows)
        vec = [rows[i][j] for i in range(1, n) for j in range(i)]
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix is not symmetric")
        return cls(n, s, first_occurrence(vec))

    @classmethod
    def from_letters(cls, rows: Sequence[str], s: int | None = None):
        """Build from a letter pattern; returns ``(matrix, letter -> color)``."""
        n = len(rows)
        vec = [rows[i][j] for i in range(1, n) for j in range(i)]
        mapping: dict = {}
        for ch in vec:
            mapping.setdefault(ch, len(mapping))
        for i in range(n):
            if rows[i][i] != "1":
                raise ValueError("diagonal must be 1")
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"pattern not symmetric at ({i}, {j})")
        g = cls(n, s if s is not None else len(mapping), bytes(mapping[ch] for ch in vec))
        return g, mapping

    def color(self, i: int, j: int) -> int:
        return self.colors[tri_index(i, j)]

    def rows(self) -> list:
        """Dense color matrix; diagonal entries are -1."""
        n = self.n
        m = [[-1] * n for _ in range(n)]
        k = 0
        for i in range(1, n):
            for j in range(i):
                m[i][j] = m[j][i] = self.colors[k]
                k += 1
        return m

    @property
    def used_colors(self) -> int:
        return max(self.colors) + 1 if self.colors else 0

    def submatrix(self, vertices: Sequence[int]) -> "CandidateGramMatrix":
        vec = [self.color(vertices[i], vertices[j]) for i in range(1, len(vertices)) for j in range(i)]
        return CandidateGramMatrix(len(vertices), self.s, first_occurrence(vec))

    def delete(self, v: int) -> "CandidateGramMatrix":
        return self.submatrix([i for i in range(self.n) if i != v])

    def permuted(self, perm: Sequence[int], sigma: Sequence[int] | None = None) -> "CandidateGramMatrix":
        """Image ``P G(x_sigma) P^T``: new vertex i is old vertex perm[i]."""
        vec = []
        for i in range(1, self.n):
            for j in range(i):
                c = self.color(perm[i], perm[j])
                vec.append(sigma[c] if sigma is not None else c)
        return CandidateGramMatrix(self.n, self.s, first_occurrence(vec))

    def to_line(self) -> str:
        return format_line(self.n, self.s, self.colors)

    @classmethod
    def from_line(cls, line: str) -> "CandidateGramMatrix":
        n, s, colors = parse_line(line)
        return cls(n, s, colors)

    def __str__(self):
        m = self.rows()
        return "\n".join(" ".join("1" if c < 0 else DIGITS[c] for c in row) for row in m)


def format_line(n: int, s: int, colors: bytes) -> str:
    return f"{n} {s} k:{''.join(DIGITS[c] for c in colors)}"


def parse_line(line: str):
    parts = line.split()
    if len(parts) != 3 or not parts[2].startswith("k:"):
        raise ValueError(f"malformed matrix record: {line!r}")
    n, s = int(parts[0]), int(parts[1])
    colors = bytes(DIGITS.index(ch) for ch in parts[2][2:])
    if len(colors) != n * (n - 1) // 2:
        raise ValueError(f"record length mismatch for n={n}: {line!r}")
    return n, s, colors


# ---------------------------------------------------------------------------
# canonical form


def _lexmin(mat: list, n: int, target: bytes | None = None):
    """Lexicographically minimal vectorization over all vertex orders.

    With ``target`` given, returns False as soon as some order beats it,
    else True (``target`` is then minimal).  Without it, returns the minimum.

    The search proceeds one position at a time; only orders whose prefix
    attains the minimal vector so far survive, and states that have the same
    future (same used set, same raw colors from every unused vertex to the
    prefix, same renaming) are merged.
    """
    if n <= 1:
        return True if target is not None else b""
    # state: (order tuple, renaming dict as tuple of pairs, next label)
    frontier = [((v,), (), 0) for v in range(n)]
    out = []
    pos = 0
    for k in range(1, n):
        tseg = target[pos:pos + k] if target is not None else None
        best = None
        children = []
        for order, ren_items, nxt in frontier:
            ren = dict(ren_items)
            used = set(order)
            for v in range(n):
                if v in used:
                    continue
                row = mat[v]
                seg = []
                tmp = None
                lab_next = nxt
                worse = False
                decided = best is None and tseg is None
                cmp_to = best if best is not None else tseg
                for j in range(k):
                    c = row[order[j]]
                    lab = ren.get(c)
                    if lab is None:
                        if tmp is None:
                            tmp = {}
                        lab = tmp.get(c)
                        if lab is None:
                            lab = tmp[c] = lab_next
                            lab_next += 1
                    seg.append(lab)
                    if not decided:
                        ref = cmp_to[j]
                        if lab > ref:
                            worse = True
                            break
                        if lab < ref:
                            decided = True
                            if tseg is not None:
                                # strictly below the target vector
                                return False
                            children.clear()
                if worse:
                    continue
                seg_b = bytes(seg)
                if best is None or seg_b < best:
                    best = seg_b
                new_ren = ren_items
                if tmp:
                    new_ren = tuple(sorted({**ren, **tmp}.items()))
                children.append((order + (v,), new_ren, lab_next))
        if target is not None and best is None:
            # no child matched (cannot happen for a valid target)
            return False
        out.append(best)
        pos += k
        # merge equivalent states
        seen = {}
        for order, ren_items, nxt in children:
            used = frozenset(order)
            prof = tuple(tuple(mat[w][o] for o in order) for w in range(n) if w not in used)
            key = (used, prof, ren_items)
            if key not in seen:
                seen[key] = (order, ren_items, nxt)
        frontier = list(seen.values())
    if target is not None:
        return True
    return b"".join(out)


def canonical_key(g: CandidateGramMatrix) -> CanonicalKey:
    """Vectorization of the canonical (lex-minimal) representative."""
    return _lexmin(g.rows(), g.n)


def canonical_form(g: CandidateGramMatrix) -> CandidateGramMatrix:
    return CandidateGramMatrix(g.n, g.s, canonical_key(g))


def is_canonical(g: CandidateGramMatrix) -> bool:
    return _lexmin(g.rows(), g.n, g.colors)


def key_from_vector(vec: Sequence[int], n: int) -> CanonicalKey:
    """Canonical key of a raw lower-triangular color vector of order n."""
    m = [[-1] * n for _ in range(n)]
    k = 0
    for i in range(1, n):
        for j in range(i):
            m[i][j] = m[j][i] = vec[k]
            k += 1
    return _lexmin(m, n)


# ---------------------------------------------------------------------------
# orderly generation


def extension_rows(used: int, length: int, s: int) -> Iterator[tuple]:
    """All rows of ``length`` colors respecting first-occurrence numbering."""

    def rec(prefix, used):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for c in range(min(used + 1, s)):
            prefix.append(c)
            yield from rec(prefix, max(used, c + 1))
            prefix.pop()

    yield from rec([], used)


def augment(g: CandidateGramMatrix) -> Iterator[CandidateGramMatrix]:
    """Canonical children of a canonical matrix, each exactly once."""
    n = g.n
    base = g.rows()
    for row in extension_rows(g.used_colors, n, g.s):
        vec = g.colors + bytes(row)
        mat = [r + [row[i]] for i, r in enumerate(base)]
        mat.append(list(row) + [-1])
        if _lexmin(mat, n + 1, vec):
            yield CandidateGramMatrix(n + 1, g.s, vec)


def seed(s: int) -> CandidateGramMatrix:
    return CandidateGramMatrix(1, s, b"")


class GenerationLimit(Exception):
    """Raised when exhaustive generation exceeds its configured cap."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


def generate_levels(n: int, s: int, limit: int | None = None) -> Iterator[list]:
    """Yield the complete canonical sets of orders 1..n (sorted by key)."""
    level = [seed(s)]
    yield level
    for order in range(2, n + 1):
        nxt = []
        for parent in level:
            for child in augment(parent):
                nxt.append(child)
                if limit is not None and len(nxt) > limit:
                    raise GenerationLimit(
                        f"more than {limit} matrices at order {order}", {"order": order, "count": len(nxt)}
                    )
        nxt.sort(key=lambda c: c.colors)
        level = nxt
        yield level


def count_candidates(n: int, s: int, limit: int | None = None) -> int:
    """Number of equivalence classes of order-n candidates with at most s colors."""
    if n < 1 or s < 1:
        raise ValueError("need n >= 1 and s >= 1")
    count = 0
    for count_level in generate_levels(n, s, limit):
        count = len(count_level)
    return count


def brute_force_classes(n: int, s: int) -> int:
    """Orbit count by canonicalizing every coloring (test oracle, tiny n only)."""
    m = n * (n - 1) // 2
    perms = list(itertools.permutations(range(n)))
    seen = set()
    for vec in itertools.product(range(s), repeat=m):
        if vec != tuple(first_occurrence(vec)):
            continue
        g = CandidateGramMatrix(n, s, bytes(vec))
        best = min(
            g.permuted(p).colors for p in perms
        )
        seen.add(best)
    return len(seen)
