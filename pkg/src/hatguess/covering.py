"""Coverable point sets in N^d and the book-graph adversary.

A finite S in N^d is coverable when every point can be given an axis so that
no two points sharing an axis lie on a common line parallel to that axis.
Axes are 0-based internally; files and reports use 1..d.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional, Sequence

from .engine import Strategy
from .errors import BudgetExceeded, InternalConsistencyError
from .graphs import BookSpec, book

log = logging.getLogger(__name__)

Point = tuple[int, ...]


@dataclass(frozen=True)
class PointSet:
    d: int
    points: tuple[Point, ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        pts = tuple(tuple(int(x) for x in p) for p in self.points)
        for p in pts:
            if len(p) != self.d:
                raise ValueError(f"point {p} is not {self.d}-dimensional")
            if min(p) < 0:
                raise ValueError(f"point {p} has a negative coordinate")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class Cover:
    """``axes[k]`` is the (0-based) axis assigned to the k-th point."""

    axes: tuple[int, ...]


@dataclass(frozen=True)
class HBounds:
    d: int
    lower: int
    upper: int


def line_of(p: Point, axis: int) -> tuple:
    """Identifier of the line through p parallel to ``axis``."""
    return (axis, p[:axis] + p[axis + 1:])


def is_valid_cover(S: PointSet, cover: Cover) -> bool:
    if len(cover.axes) != len(S.points):
        return False
    used = set()
    for p, a in zip(S.points, cover.axes):
        if not 0 <= a < S.d:
            return False
        key = line_of(p, a)
        if key in used:
            return False
        used.add(key)
    return True


def compress(S: PointSet) -> PointSet:
    """Replace each coordinate by its rank among the values used on that axis."""
    ranks = []
    for i in range(S.d):
        vals = sorted({p[i] for p in S.points})
        ranks.append({v: k for k, v in enumerate(vals)})
    return PointSet(S.d, tuple(tuple(ranks[i][p[i]] for i in range(S.d)) for p in S.points))


# -- matching ------------------------------------------------------------------------

def hopcroft_karp(adj: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Maximum bipartite matching; returns the partner of each left vertex or -1."""
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    inf = math.inf
    while True:
        dist = [inf] * n_left
        queue = deque()
        for u in range(n_left):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for r in adj[u]:
                w = match_r[r]
                if w < 0:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_l

        def dfs(u):
            for r in adj[u]:
                w = match_r[r]
                if w < 0 or (dist[w] == dist[u] + 1 and dfs(w)):
                    match_l[u] = r
                    match_r[r] = u
                    return True
            dist[u] = inf
            return False

        for u in range(n_left):
            if match_l[u] < 0:
                dfs(u)


def is_coverable(S: PointSet, budget: int = 10 ** 4) -> Optional[Cover]:
    """A cover if one exists, else None (a maximum matching left a point out)."""
    if len(S) > budget:
        raise BudgetExceeded(f"{len(S)} points exceed the budget of {budget}")
    slot_id: dict = {}
    adj = []
    for p in S.points:
        row = []
        for a in range(S.d):
            row.append(slot_id.setdefault(line_of(p, a), len(slot_id)))
        adj.append(row)
    match = hopcroft_karp(adj, len(slot_id))
    if any(m < 0 for m in match):
        return None
    return Cover(tuple(adj[k].index(m) for k, m in enumerate(match)))


# -- bounds on h(N^d) -------------------------------------------------------------------

def lb(d: int) -> int:
    """Proven lower bound on h(N^d): 1, then (d+1) * lb(d-1) + d; equals (d+1)! - 1."""
    if d < 1:
        raise ValueError("d must be >= 1")
    h = 1
    for k in range(2, d + 1):
        h = (k + 1) * h + k
    return h


def h_bounds(d: int) -> HBounds:
    if d < 1:
        raise ValueError("d must be >= 1")
    upper = d ** (d - 2) * (d * d + d - 1) if d >= 2 else 1
    return HBounds(d, math.factorial(d + 1) - 1, upper)


def noncoverable_witness(d: int) -> PointSet:
    """upper(d)+1 points of the box [d]^(d-1) x [d+1], dropping the lexicographically last."""
    size = h_bounds(d).upper + 1
    box = list(itertools.product(*([range(d)] * (d - 1) + [range(d + 1)])))
    return PointSet(d, tuple(box[:size]))


def cover_recursive(S: PointSet, check: bool = False) -> Cover:
    """Constructive cover for any set of at most (d+1)! - 1 points.

    Splits on abundant coordinate values (those shared by more than lb(d-1)
    points on an axis), recurses inside hyperplanes for points with some
    non-abundant coordinate, and places the rest (a subset of a d^d box after
    ranking) by coordinate sum mod d.  ``check`` asserts that the line families
    used by the different classes are pairwise disjoint.
    """
    if len(S) > lb(S.d):
        raise ValueError(f"{len(S)} points exceed the guaranteed size lb({S.d}) = {lb(S.d)}")
    axes = _cover_rec(list(S.points), list(range(S.d)), check)
    cover = Cover(tuple(axes))
    if check and not is_valid_cover(S, cover):
        raise InternalConsistencyError("recursive cover is invalid")
    return cover


def _cover_rec(points: list[Point], axes: list[int], check: bool) -> list[int]:
    k = len(axes)
    if not points:
        return []
    if k == 1:
        if len(points) > 1:
            raise InternalConsistencyError("more than one point on a line")
        return [axes[0]]
    h = lb(k - 1)
    abundant = []
    for i in range(k):
        counts = Counter(p[i] for p in points)
        vals = sorted(y for y, c in counts.items() if c >= h + 1)
        if len(vals) > k:
            raise InternalConsistencyError(f"{len(vals)} abundant values on axis {i}")
        abundant.append({y: r for r, y in enumerate(vals)})
    groups: dict[tuple[int, int], list[int]] = {}
    out = [0] * len(points)
    for idx, p in enumerate(points):
        t = next((i for i in range(k) if p[i] not in abundant[i]), None)
        if t is None:
            residue = sum(abundant[i][p[i]] for i in range(k)) % k
            out[idx] = axes[residue]
            groups.setdefault((-1, 0), []).append(idx)
        else:
            groups.setdefault((t, p[t]), []).append(idx)
    for (t, y), members in groups.items():
        if t < 0:
            continue
        if len(members) > h:
            raise InternalConsistencyError(f"hyperplane class of size {len(members)} exceeds {h}")
        sub = [points[m][:t] + points[m][t + 1:] for m in members]
        sub_axes = _cover_rec(sub, axes[:t] + axes[t + 1:], check)
        for m, a in zip(members, sub_axes):
            out[m] = a
    if check:
        _check_disjoint(points, groups, k)
    return out


def _check_disjoint(points, groups, k):
    seen: set = set()
    total = 0
    for (t, _), members in groups.items():
        family = {line_of(points[m], j) for m in members for j in range(k) if j != t}
        total += len(family)
        seen |= family
    if len(seen) != total:
        raise InternalConsistencyError("line families of different classes intersect")


# -- book graphs ---------------------------------------------------------------------------

def book_adversary(d: int, n: int, S: PointSet, strategy: Strategy) -> tuple[int, ...]:
    """All-wrong hat assignment on B_{d,n} with |S|+1 colors for a non-coverable S.

    The spine is colored by a point of S (spine vertex i takes coordinate i);
    each page takes the least color it never guesses over S.
    """
    if S.d != d:
        raise ValueError(f"point set has dimension {S.d}, book has spine {d}")
    S = compress(S)
    q = len(S)
    if strategy.q != q + 1:
        raise ValueError(f"strategy must use |S|+1 = {q + 1} colors, uses {strategy.q}")
    if is_coverable(S) is not None:
        raise ValueError("point set is coverable; the adversary needs a non-coverable set")
    g = book(BookSpec(d, n))
    strategy.check(g)
    pts = sorted(S.points)
    pages = []
    for v in range(d, d + n):
        guessed = {strategy.guess(v, s) for s in pts}
        pages.append(next(c for c in range(q + 1) if c not in guessed))
    for s in pts:
        chi = list(s) + pages
        if all(strategy.guess(u, chi[:u] + chi[u + 1:]) != chi[u] for u in range(d)):
            return tuple(chi)
    raise InternalConsistencyError("every spine coloring in S is guessed by some spine vertex")


# -- empirical search for h ----------------------------------------------------------------

@dataclass
class HSearchReport:
    mode: str
    d: int
    box: tuple[int, ...]
    size: int
    checked: int = 0
    coverable: int = 0
    noncoverable: int = 0
    witness: Optional[PointSet] = None
    seed: Optional[int] = None
    total: Optional[int] = field(default=None)


def _box_points(box: Sequence[int]) -> list[Point]:
    return list(itertools.product(*(range(b) for b in box)))


def _next_combination(c: list[int], n: int) -> bool:
    k = len(c)
    i = k - 1
    while i >= 0 and c[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for j in range(i + 1, k):
        c[j] = c[j - 1] + 1
    return True


def _scan_range(box, size, start, stop):
    """(first non-coverable rank in [start, stop) or None, ranks checked)."""
    from .constructive import unrank_combination

    pts = _box_points(box)
    d = len(box)
    if start >= stop:
        return None, 0
    c = list(unrank_combination(len(pts), size, start))
    rank = start
    while rank < stop:
        if is_coverable(PointSet(d, tuple(pts[i] for i in c))) is None:
            return rank, rank - start + 1
        rank += 1
        if not _next_combination(c, len(pts)):
            break
    return None, rank - start


def search_h(d: int, box: Sequence[int], size: int, mode: str = "exhaustive", trials: int = 1000,
             seed: int = 0, budget: int = 10 ** 7, jobs: int = 1) -> HSearchReport:
    """Probe h(N^d) on subsets of a box.

    Exhaustive mode checks size-subsets in lexicographic order and stops at
    the first non-coverable one.  Random mode samples ``trials`` subsets.
    """
    box = tuple(box)
    if len(box) != d:
        raise ValueError(f"box has {len(box)} sides, expected {d}")
    pts = _box_points(box)
    if size > len(pts):
        raise ValueError(f"box holds only {len(pts)} points")
    report = HSearchReport(mode, d, box, size, seed=seed if mode == "random" else None)
    if mode == "exhaustive":
        total = comb(len(pts), size)
        report.total = total
        if total > budget:
            raise BudgetExceeded(f"C({len(pts)}, {size}) = {total} subsets exceed budget {budget}")
        if jobs <= 1:
            hits = [_scan_range(box, size, 0, total)]
        else:
            cuts = [total * k // jobs for k in range(jobs + 1)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                hits = list(pool.map(_scan_range, [box] * jobs, [size] * jobs, cuts[:-1], cuts[1:]))
        first = min((h for h, _ in hits if h is not None), default=None)
        if first is None:
            report.checked = report.coverable = total
        else:
            from .constructive import unrank_combination

            report.checked = first + 1
            report.coverable = first
            report.noncoverable = 1
            report.witness = PointSet(d, tuple(pts[i] for i in unrank_combination(len(pts), size, first)))
        return report
    if mode != "random":
        raise ValueError(f"unknown mode {mode!r}")
    if trials > budget:
        raise BudgetExceeded(f"{trials} trials exceed budget {budget}")
    rng = random.Random(seed)
    for _ in range(trials):
        S = PointSet(d, tuple(sorted(rng.sample(pts, size))))
        report.checked += 1
        if is_coverable(S) is None:
            report.noncoverable += 1
            if report.witness is None:
                report.witness = S
        else:
            report.coverable += 1
    return report


# -- files ---------------------------------------------------------------------------------

def parse_pointset(text: str) -> PointSet:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError("point set file must start with 'd k'")
    d, k = (int(x) for x in lines[0])
    if len(lines) - 1 != k:
        raise ValueError(f"expected {k} points, found {len(lines) - 1}")
    pts = []
    for ln in lines[1:]:
        if len(ln) != d:
            raise ValueError(f"point line {' '.join(ln)!r} does not have {d} coordinates")
        pts.append(tuple(int(x) for x in ln))
    return PointSet(d, tuple(pts))


def format_pointset(S: PointSet) -> str:
    return "\n".join([f"{S.d} {len(S)}"] + [" ".join(map(str, p)) for p in S.points]) + "\n"


def format_cover(cover: Cover) -> str:
    return "".join(f"{k} {a + 1}\n" for k, a in enumerate(cover.axes))


def parse_cover(text: str, k: int) -> Cover:
    axes = [None] * k
    for ln in text.splitlines():
        if not ln.strip():
            continue
        idx, a = (int(x) for x in ln.split())
        axes[idx] = a - 1
    if any(a is None for a in axes):
        raise ValueError("cover file does not assign every point")
    return Cover(tuple(axes))
