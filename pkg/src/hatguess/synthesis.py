"""Decide whether (G, q) admits a winning strategy by exact search.

Decision variables are the guesses ``x[v, ctx]`` for every vertex and visible
context.  A coloring is *covered* once some vertex's variable for that
coloring holds that vertex's own color.  The search repeatedly takes the least
uncovered coloring and branches over the vertices that could still cover it.

Propagation keeps, per coloring, the number of matching and mismatching
assigned variables: a coloring with all n variables mismatched is a conflict,
one with n-1 mismatched forces its last variable.  A counting bound and a
matching relaxation prune when the open variables cannot cover the remaining
colorings even in the best case.
"""
from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernel
from .engine import TableStrategy, verify_winning
from .errors import BudgetExceeded, InternalConsistencyError
from .graphs import Graph

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10 ** 8
DEFAULT_SIZE_BUDGET = 10 ** 6

WINNING = "winning"
IMPOSSIBLE = "impossible"
OVER_BUDGET = "budget-exceeded"


@dataclass
class SynthesisStats:
    nodes: int = 0
    forced: int = 0
    seconds: float = 0.0


@dataclass
class SynthesisResult:
    status: str
    strategy: Optional[TableStrategy] = None
    stats: SynthesisStats = field(default_factory=SynthesisStats)

    @property
    def winning(self) -> bool:
        return self.status == WINNING


class _CoverSearch:
    def __init__(self, g: Graph, q: int):
        n = g.n
        self.n, self.q = n, q
        self.ncol = ncol = q ** n
        digits = np.indices((q,) * n, dtype=np.int32).reshape(n, -1).T  # row c = c-th coloring
        offsets = [0]
        for v in range(n):
            offsets.append(offsets[-1] + q ** g.degree(v))
        self.offsets = offsets
        self.nvar = nvar = offsets[-1]
        var_of = np.empty((ncol, n), dtype=np.int64)
        for v in range(n):
            deg = g.degree(v)
            w = np.array([q ** (deg - 1 - k) for k in range(deg)], dtype=np.int64)
            ctx = digits[:, list(g.adj[v])] @ w if deg else np.zeros(ncol, dtype=np.int64)
            var_of[:, v] = offsets[v] + ctx
        need = np.ascontiguousarray(digits, dtype=np.int64)
        # colorings covered by (x, k), grouped by row x*q + k
        rows = (var_of * q + need).ravel()
        order = np.argsort(rows, kind="stable")
        cov_idx = (order // n).astype(np.int64)
        cov_ptr = np.zeros(nvar * q + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=nvar * q), out=cov_ptr[1:])
        weight = np.array([q ** (n - 1 - g.degree(v)) for v in range(n)
                           for _ in range(offsets[v + 1] - offsets[v])], dtype=np.int64)
        sc = np.zeros(8, dtype=np.int64)
        sc[_kernel.CAPACITY] = weight.sum()
        sc[_kernel.UNCOVERED] = ncol
        sc[_kernel.MAXW] = weight.max()
        self.st = (
            var_of, need, cov_ptr, cov_idx,
            np.full(nvar, (1 << q) - 1, dtype=np.int64),  # domain
            np.full(nvar, -1, dtype=np.int64),  # value
            np.zeros(ncol, dtype=np.int64),  # covered
            np.zeros(ncol, dtype=np.int64),  # dead
            np.repeat(weight[:, None], q, axis=1),  # unc
            weight.copy(),  # pot
            np.full(ncol, -1, dtype=np.int64),  # match
            np.zeros(nvar, dtype=np.int64),  # load
            np.zeros(nvar * q, dtype=np.int64), np.zeros(nvar * q, dtype=np.int64),  # trail
            np.zeros(ncol + 1, dtype=np.int64),  # pend
            sc,
            np.zeros(ncol, dtype=np.int64), np.zeros(ncol, dtype=np.int64),  # BFS parents
            np.zeros(ncol, dtype=np.int64), np.zeros(nvar, dtype=np.int64),  # BFS stamps
            np.zeros(ncol, dtype=np.int64),  # BFS queue
        )
        self.stats = SynthesisStats()
        if q == 1:
            for x in range(nvar):
                _kernel._fix(self.st, x, 0)

    def run(self, node_budget: int, choices=()) -> str:
        """``choices[s]`` lists alternative partial assignments [(x, color), ...] for root step s."""
        step_ptr, alt_ptr, alt_x, alt_k = [0], [0], [], []
        for step in choices:
            for alt in step:
                for x, k in alt:
                    alt_x.append(x)
                    alt_k.append(k)
                alt_ptr.append(len(alt_x))
            step_ptr.append(len(alt_ptr) - 1)
        arr = lambda a: np.array(a, dtype=np.int64)
        code = _kernel.search(self.st, arr(step_ptr), arr(alt_ptr), arr(alt_x), arr(alt_k),
                              np.int64(node_budget))
        sc = self.st[15]
        self.stats.nodes = int(sc[_kernel.NODES])
        self.stats.forced = int(sc[_kernel.FORCED])
        return {_kernel.S_WINNING: WINNING, _kernel.S_IMPOSSIBLE: IMPOSSIBLE,
                _kernel.S_BUDGET: OVER_BUDGET}[code]

    def strategy(self) -> TableStrategy:
        domain, value = self.st[4], self.st[5]
        vals = [int(v) if v >= 0 else (int(d) & -int(d)).bit_length() - 1 for v, d in zip(value, domain)]
        return TableStrategy(self.q, [vals[self.offsets[v]:self.offsets[v + 1]] for v in range(self.n)])


def line_patterns(q: int) -> list[tuple[int, ...]]:
    """0^a 1^b 2^c ... for every partition a >= b >= c >= ... of q."""
    out = []

    def parts(rest, cap, acc):
        if rest == 0:
            out.append(tuple(k for k, m in enumerate(acc) for _ in range(m)))
            return
        for m in range(min(rest, cap), 0, -1):
            parts(rest - m, m, acc + [m])

    parts(q, q, [])
    return out


def symmetry_choices(g: Graph, q: int, max_choices: int = 64) -> list[list[list[tuple[int, int, int]]]]:
    """Root-level alternatives (vertex, context index, guess) that break color symmetry.

    Relabeling the colors of one vertex maps winning strategies to winning
    strategies.  Vertices are visited by ascending degree, then index; when v and some of
    its neighbors have not been used yet, their relabelings put the line of
    v's table along the last such neighbor u (other neighbors at color 0) into
    the form 0^a 1^b ... with a >= b >= ..., and for further unused neighbors
    w the entries at w = 1..q-1 (others 0) into nondecreasing order (this only
    needs relabelings of w fixing 0).  The closed neighborhood of v is then
    marked used, so later steps never disturb an earlier normalized line.
    """
    if q < 2:
        return []
    used: set[int] = set()
    steps = []
    for v in sorted(range(g.n), key=lambda u: (g.degree(u), u)):
        if v in used:
            continue
        nbrs = g.adj[v]
        deg = len(nbrs)
        free = [k for k, u in enumerate(nbrs) if u not in used]
        used.add(v)
        used.update(nbrs)

        def ctx(k, c):
            return c * q ** (deg - 1 - k)

        if not free:
            steps.append([[(v, 0, 0)]])
            continue
        line = free[-1]
        alts = [[(v, ctx(line, c), w[c]) for c in range(q)] for w in reversed(line_patterns(q))]
        if q >= 3:
            sorts = list(itertools.combinations_with_replacement(range(q), q - 1))
            for k in free[:-1]:
                if len(alts) * len(sorts) > max_choices:
                    break
                alts = [a + [(v, ctx(k, c + 1), s[c]) for c in range(q - 1)] for a in alts for s in sorts]
        steps.append(alts)
    return steps


def components(g: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, in order of least vertex."""
    seen = [False] * g.n
    out = []
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        comp, stack = [], [r]
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        out.append(sorted(comp))
    return out


def _induced(g: Graph, vs: list[int]) -> Graph:
    idx = {v: k for k, v in enumerate(vs)}
    return Graph.from_edges(len(vs), [(idx[u], idx[v]) for u, v in g.edges() if u in idx and v in idx])


def _search(g: Graph, q: int, node_budget: int, stats: SynthesisStats) -> tuple[str, Optional[list]]:
    search = _CoverSearch(g, q)
    choices = [[[(search.offsets[v] + ctx, k) for v, ctx, k in alt] for alt in step]
               for step in symmetry_choices(g, q)]
    status = search.run(node_budget, choices)
    stats.nodes += search.stats.nodes
    stats.forced += search.stats.forced
    return status, search.strategy().tables(g) if status == WINNING else None


def exists_winning_strategy(g: Graph, q: int, node_budget: int = DEFAULT_NODE_BUDGET,
                            size_budget: int = DEFAULT_SIZE_BUDGET) -> SynthesisResult:
    """Sound and complete search for a winning strategy with q colors.

    A disconnected graph wins exactly when one of its components does (losing
    colorings of the parts combine into a losing coloring of the whole), so
    components are searched separately, smallest first.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    nvar = sum(q ** g.degree(v) for v in range(g.n))
    ncol = q ** g.n
    if nvar > size_budget or ncol > size_budget:
        raise BudgetExceeded(
            f"(n={g.n}, q={q}) has {nvar} variables and {ncol} colorings; size budget is {size_budget}")
    t0 = time.perf_counter()
    stats = SynthesisStats()
    comps = components(g)
    status, tables = IMPOSSIBLE, None
    if len(comps) == 1:
        status, tables = _search(g, q, node_budget, stats)
    else:
        for comp in sorted(comps, key=len):
            sub, sub_tables = _search(_induced(g, comp), q, node_budget - stats.nodes, stats)
            if sub == WINNING:
                tables = [[0] * q ** g.degree(v) for v in range(g.n)]
                for k, v in enumerate(comp):
                    tables[v] = sub_tables[k]
                status = WINNING
                break
            if sub == OVER_BUDGET:
                status = OVER_BUDGET
                break
    stats.seconds = time.perf_counter() - t0
    log.debug("q=%d: %s after %d nodes", q, status, stats.nodes)
    if status == WINNING:
        s = TableStrategy(q, tables)
        if not verify_winning(g, q, s).winning:
            raise InternalConsistencyError("search produced a strategy that does not verify")
        return SynthesisResult(WINNING, s, stats)
    return SynthesisResult(status, None, stats)


def scan_q(g: Graph, q_max: int, node_budget: int = DEFAULT_NODE_BUDGET,
           size_budget: int = DEFAULT_SIZE_BUDGET, monotone: bool = False) -> dict[int, SynthesisResult]:
    """Decide every q in 1..q_max (stop at the first loss if ``monotone``)."""
    out = {}
    for q in range(1, q_max + 1):
        res = exists_winning_strategy(g, q, node_budget, size_budget)
        out[q] = res
        if res.status == OVER_BUDGET:
            raise BudgetExceeded(f"q={q} exceeded {node_budget} search nodes", res.stats)
        if monotone and not res.winning:
            break
    return out


def hat_guessing_number(g: Graph, q_max: int, node_budget: int = DEFAULT_NODE_BUDGET,
                        size_budget: int = DEFAULT_SIZE_BUDGET, monotone: bool = False) -> int:
    results = scan_q(g, q_max, node_budget, size_budget, monotone)
    return max(q for q, r in results.items() if r.winning)
