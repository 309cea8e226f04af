"""Level-by-level classification search.

Level ``L_n`` holds canonical candidates of order n.  Level n+1 is built by
orderly augmentation of ``L_n`` and keeps a child only if (a) all n of its
order-n principal submatrices are in ``L_n`` up to equivalence and (b) for
``start <= n+1 <= cutoff`` its rank system is not infeasible.  Rank is
hereditary, so (a) is sound.  While a new row is being chosen entry by entry,
the submatrix on the first k old vertices plus the new one must already lie
in ``L_{k+1}``; this prunes rows early without changing the result.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from math import comb
from pathlib import Path
from typing import Callable, Iterable

from .exactmath.groebner import GroebnerBudget
from .geomcert import GENERAL, MODES, SPHERICAL
from .gramgen import CandidateGramMatrix, _lexmin, key_from_vector
from .rankfilter import NonIsolatedSolutions, Verdict, VerdictCache, build_system, rank_feasible, solve_parameters

log = logging.getLogger(__name__)

MANIFEST_VERSION = 1


@dataclass
class SearchParams:
    d: int
    s: int
    mode: str = SPHERICAL
    max_n: int | None = None
    cutoff: int | None = None
    max_basis: int = 400
    max_degree: int = 40
    max_pairs: int = 200_000
    jobs: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.d < 2:
            raise ValueError("search needs d >= 2")
        if self.s < 1:
            raise ValueError("need s >= 1")
        cap = comb(self.d + self.s, self.s)
        if self.max_n is None:
            self.max_n = cap
        if self.max_n > cap:
            raise ValueError(f"max_n={self.max_n} exceeds the bound binom(d+s, s) = {cap}")
        if self.cutoff is None:
            self.cutoff = self.d + 5

    @property
    def start(self) -> int:
        """First order at which the rank condition is not vacuous."""
        return self.d + 1 if self.mode == SPHERICAL else self.d + 2

    @property
    def first_reported(self) -> int:
        return self.d + 1

    @property
    def budget(self) -> GroebnerBudget:
        return GroebnerBudget(self.max_basis, self.max_degree, self.max_pairs)

    def rank_tested(self, n: int) -> bool:
        return self.start <= n <= self.cutoff


@dataclass
class LevelSet:
    n: int
    members: list
    found: int
    verdicts: dict = field(default_factory=dict)

    @property
    def keys(self) -> set:
        return {g.colors for g in self.members}


# ---------------------------------------------------------------------------
# augmentation with heredity


def _children(parent: CandidateGramMatrix, lower: dict, start: int) -> list:
    """Canonical children of ``parent`` whose principal submatrices all lie in ``lower``.

    ``lower[k]`` is the key set of ``L_k`` (only needed for k >= start).
    """
    n = parent.n
    s = parent.s
    base = parent.rows()
    pcols = parent.colors
    out = []
    row = []
    memo: dict = {}

    def prefix_ok(k):
        # submatrix on old vertices 0..k-1 plus the new vertex
        m = k + 1
        if m < start or m > n or m not in lower:
            return True
        key = tuple(row[:k])
        hit = memo.get(key)
        if hit is None:
            vec = pcols[: k * (k - 1) // 2] + bytes(row[:k])
            hit = key_from_vector(vec, m) in lower[m]
            memo[key] = hit
        return hit

    def finish():
        vec = pcols + bytes(row)
        mat = [r + [row[i]] for i, r in enumerate(base)]
        mat.append(list(row) + [-1])
        if not _lexmin(mat, n + 1, vec):
            return
        if n + 1 - 1 >= start and n in lower:
            keys = lower[n]
            for v in range(n):
                sub = [w for w in range(n + 1) if w != v]
                svec = [mat[sub[i]][sub[j]] for i in range(1, n) for j in range(i)]
                if key_from_vector(svec, n) not in keys:
                    return
        out.append(CandidateGramMatrix(n + 1, s, vec))

    def rec(used):
        k = len(row)
        if k == n:
            finish()
            return
        for c in range(min(used + 1, s)):
            row.append(c)
            if prefix_ok(k + 1):
                rec(max(used, c + 1))
            row.pop()

    rec(parent.used_colors)
    return out


def _augment_task(args):
    parent, lower, start = args
    return _children(parent, lower, start)


def _rank_task(args):
    g, d, mode, budget = args
    return rank_feasible(build_system(g, d, mode), budget)


def _map(func: Callable, items: list, jobs: int) -> Iterable:
    if jobs <= 1 or len(items) < 2:
        return map(func, items)
    from multiprocessing import Pool

    with Pool(jobs) as pool:
        return pool.map(func, items, chunksize=max(1, len(items) // (8 * jobs)))


def run_level(prev: LevelSet, p: SearchParams, history: dict, cache: VerdictCache | None = None) -> LevelSet:
    """Build ``L_{n+1}`` from ``L_n``; ``history`` maps k to the key set of ``L_k``."""
    n = prev.n + 1
    lower = {k: v for k, v in history.items() if k >= p.start}
    tasks = [(g, lower, p.start) for g in prev.members]
    found = []
    for kids in _map(_augment_task, tasks, p.jobs):
        found.extend(kids)
    found.sort(key=lambda g: g.colors)
    verdicts = {}
    kept = found
    if p.rank_tested(n):
        todo = []
        for g in found:
            v = cache.get(g, p.d, p.mode) if cache is not None else None
            if v is None:
                todo.append(g)
            else:
                verdicts[g.colors] = v
        results = _map(_rank_task, [(g, p.d, p.mode, p.budget) for g in todo], p.jobs)
        for g, v in zip(todo, results):
            verdicts[g.colors] = v
            if cache is not None:
                cache.put(g, p.d, p.mode, v)
        kept = [g for g in found if verdicts[g.colors] != Verdict.INFEASIBLE]
    return LevelSet(n, kept, len(found), verdicts)


# ---------------------------------------------------------------------------
# persistence


def _level_path(out: Path, n: int) -> Path:
    return out / f"level_{n:02d}.txt"


def _write_level(out: Path, level: LevelSet) -> None:
    tmp = _level_path(out, level.n).with_suffix(".tmp")
    with open(tmp, "w") as fh:
        for g in level.members:
            fh.write(g.to_line() + "\n")
    os.replace(tmp, _level_path(out, level.n))


def _read_level(out: Path, n: int) -> list:
    with open(_level_path(out, n)) as fh:
        return [CandidateGramMatrix.from_line(line) for line in fh if line.strip()]


def _write_manifest(out: Path, p: SearchParams, counts: list) -> None:
    data = {"version": MANIFEST_VERSION, "params": asdict(p), "levels": counts}
    tmp = out / "manifest.tmp"
    tmp.write_text(json.dumps(data, indent=1))
    os.replace(tmp, out / "manifest.json")


def _read_manifest(out: Path):
    path = out / "manifest.json"
    if not path.exists():
        return None
    return json.loads(path.read_text())


# ---------------------------------------------------------------------------
# full search


@dataclass
class LevelCount:
    n: int
    found: int
    retained: int
    rank_tested: bool


@dataclass
class TerminalResult:
    matrix: CandidateGramMatrix
    admissible: list = field(default_factory=list)
    shadows: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    error: str | None = None


@dataclass
class SearchReport:
    params: SearchParams
    levels: list
    terminal_n: int
    terminals: list

    def counts(self, start: int | None = None) -> list:
        return [c.found for c in self.levels if start is None or c.n >= start]

    def filtered_counts(self) -> list:
        return [c.retained for c in self.levels if c.rank_tested]


def _seed_levels(p: SearchParams):
    """Complete canonical levels 1..start-1; there the rank test is vacuous."""
    from .gramgen import generate_levels

    levels = {}
    for lev in generate_levels(p.start - 1, p.s):
        levels[lev[0].n] = lev
    return levels


def full_search(
    p: SearchParams,
    out_dir: str | os.PathLike | None = None,
    resume: bool = False,
    solve: bool = True,
    progress: Callable | None = None,
) -> SearchReport:
    """Iterate :func:`run_level` until a level is empty or ``max_n`` is reached."""
    out = Path(out_dir) if out_dir is not None else None
    cache = None
    counts: list = []
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        cache = VerdictCache(out / "verdicts.txt")
    seeded = _seed_levels(p)
    history = {n: {g.colors for g in lev} for n, lev in seeded.items()}
    top = max(seeded)
    current = LevelSet(top, seeded[top], len(seeded[top]))
    for n in range(p.first_reported, top + 1):
        counts.append(asdict(LevelCount(n, len(seeded[n]), len(seeded[n]), False)))
    finished = False
    if resume and out is not None:
        man = _read_manifest(out)
        if man is not None:
            if man["params"] != asdict(p):
                raise ValueError("resume directory was created with different parameters")
            done = [c for c in man["levels"] if c["n"] > top]
            for c in done:
                members = _read_level(out, c["n"])
                history[c["n"]] = {g.colors for g in members}
                counts.append(c)
                if not members:
                    finished = True
                    break
                current = LevelSet(c["n"], members, c["found"])
    while not finished and current.n < p.max_n:
        nxt = run_level(current, p, history, cache)
        history[nxt.n] = nxt.keys
        counts.append(asdict(LevelCount(nxt.n, nxt.found, len(nxt.members), p.rank_tested(nxt.n))))
        if progress is not None:
            progress(nxt)
        log.info("n=%d found=%d retained=%d", nxt.n, nxt.found, len(nxt.members))
        if out is not None:
            _write_level(out, nxt)
            _write_manifest(out, p, counts)
        if not nxt.members:
            break
        current = nxt
    levels = [LevelCount(**c) for c in counts]
    # current is the largest nonempty level
    terminals = [solve_terminal(g, p) for g in current.members] if solve else []
    return SearchReport(p, levels, current.n, terminals)


def solve_terminal(g: CandidateGramMatrix, p: SearchParams) -> TerminalResult:
    res = TerminalResult(g)
    try:
        sols = solve_parameters(build_system(g, p.d, p.mode), g)
    except NonIsolatedSolutions as exc:
        res.error = str(exc)
        return res
    res.admissible = sols.admissible
    res.shadows = sols.shadows
    res.certificates = sols.certificates
    return res


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("FEWDIST_JOBS", "1")))
    except ValueError:
        return 1


__all__ = [
    "GENERAL",
    "SPHERICAL",
    "LevelSet",
    "SearchParams",
    "SearchReport",
    "full_search",
    "run_level",
]
