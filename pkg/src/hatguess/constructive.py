"""Explicit winning strategies.

``clique_strategy`` is the mod-sum rule on K_n.  ``GdnStrategy`` plays on the
layered clique-tree G_d(N) with q = s_d - 1 colors.  Each vertex v at depth i
owns a candidate set f_v of r_i colorings of its ancestor chain (root..v), computed
from the colors of its descendants only.  Vertex w at depth i+1 uses its own
candidate set R_w to find the colors it could "commit" to (abundant colors),
matches them order-preservingly onto a pre-assigned subset S_w of chain
colorings, and guesses the color whose image is the chain it actually sees.
The root ends up with a single candidate, which is its guess.

Tuples of colors are always indexed along the chain root..v (ascending vertex
index under the breadth-first numbering).
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Sequence

from .adversary import sylvester
from .engine import RuleStrategy, register_rule
from .errors import InternalConsistencyError
from .graphs import Graph, LayeredTreeSpec, ancestors, layered, layered_size


# -- clique ----------------------------------------------------------------------

def clique_strategy(n: int, q: Optional[int] = None) -> RuleStrategy:
    """Vertex i guesses the color making the total congruent to i mod n."""
    if q is None:
        q = n
    if q != n:
        raise ValueError(f"the mod-sum strategy on K_{n} plays with exactly {n} colors, not {q}")
    return RuleStrategy("clique", {"n": n}, n, lambda v, ctx: (v - sum(ctx)) % n)


register_rule("clique")(lambda q, n: clique_strategy(n, q))


# -- gadgets ---------------------------------------------------------------------

def r_sequence(d: int, q: Optional[int] = None) -> list[int]:
    """r_0..r_d: r_i = s_{i+1} - 2 below the leaves, r_d = q^(d+1)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if q is None:
        q = sylvester(d, limit=None) - 1
    return [sylvester(i + 1, limit=None) - 2 for i in range(d)] + [q ** (d + 1)]


def all_tuples(q: int, length: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(q), repeat=length))


def abundant_colors(R: Iterable[Sequence[int]], position: int, r: int) -> frozenset[int]:
    """Colors occurring at ``position`` in at least r+1 members of R."""
    counts: dict[int, int] = {}
    for t in R:
        counts[t[position]] = counts.get(t[position], 0) + 1
    return frozenset(c for c, k in counts.items() if k >= r + 1)


def phi(abundant: Iterable[int], subset: Iterable[tuple[int, ...]], truncate: bool = False) -> dict:
    """k-th smallest abundant color -> k-th smallest tuple of the subset."""
    cs, ts = sorted(abundant), sorted(subset)
    if len(cs) > len(ts):
        if not truncate:
            raise InternalConsistencyError(f"{len(cs)} abundant colors but only {len(ts)} targets")
        cs = cs[:len(ts)]
    return dict(zip(cs, ts))


def unrank_combination(n: int, k: int, rank: int) -> tuple[int, ...]:
    """The rank-th k-subset of range(n) in lexicographic order."""
    if not 0 <= rank < comb(n, k):
        raise ValueError("rank out of range")
    out = []
    x = 0
    for slot in range(k, 0, -1):
        while comb(n - x - 1, slot - 1) <= rank:
            rank -= comb(n - x - 1, slot - 1)
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


@lru_cache(maxsize=None)
def subset_for_child(depth: int, child_index: int, q: int, r: int) -> tuple[tuple[int, ...], ...]:
    """S_w for the child_index-th child of a depth-``depth`` vertex.

    Children cycle through all (r+1)-subsets of [q]^(depth+1) in lexicographic
    order.  With too few colors for r+1 distinct tuples the whole universe is used.
    """
    universe = q ** (depth + 1)
    k = min(r + 1, universe)
    idx = unrank_combination(universe, k, child_index % comb(universe, k))
    return tuple(_tuple_at(i, q, depth + 1) for i in idx)


def _tuple_at(i: int, q: int, length: int) -> tuple[int, ...]:
    out = [0] * length
    for k in range(length - 1, -1, -1):
        i, out[k] = divmod(i, q)
    return tuple(out)


def min_N(d: int, q: Optional[int] = None) -> tuple[int, int]:
    """(children the construction consumes, the cruder q^(dq) sufficient bound)."""
    if q is None:
        q = sylvester(d, limit=None) - 1
    r = r_sequence(d, q)
    used = max(comb(q ** (i + 1), r[i] + 1) for i in range(d))
    return used, q ** (d * q)


# -- the G_d(N) strategy -----------------------------------------------------------

class GdnStrategy(RuleStrategy):
    """Winning strategy on G_d(N) with s_d - 1 colors.

    With another q the same recipe still defines a total strategy (injections
    and candidate sets are truncated when they overflow), it just need not win.
    """

    def __init__(self, d: int, N: int, q: Optional[int] = None):
        exact = sylvester(d, limit=None) - 1
        if q is None:
            q = exact
        self.strict = q == exact
        needed, _ = min_N(d, q)
        if self.strict and N < needed:
            raise ValueError(f"G_{d}(N) needs N >= {needed} children per vertex, got N={N}")
        super().__init__("gdn", {"d": d, "N": N}, q, self._guess)
        self.d, self.N = d, N
        self.n = layered_size(d, N)
        self.r = r_sequence(d, q)
        self._depth = [len(ancestors(v, N)) for v in range(self.n)]

    @property
    def graph(self) -> Graph:
        return layered(LayeredTreeSpec(self.d, self.N))

    def children(self, v: int) -> range:
        lo = self.N * v + 1
        return range(lo, min(lo + self.N, self.n))

    def depth(self, v: int) -> int:
        return self._depth[v]

    def subset(self, w: int) -> tuple[tuple[int, ...], ...]:
        i = self._depth[w] - 1
        return subset_for_child(i, (w - 1) % self.N, self.q, self.r[i])

    def _pad(self, cands: set, i: int) -> tuple[tuple[int, ...], ...]:
        r = self.r[i]
        if len(cands) > r:
            if self.strict:
                raise InternalConsistencyError(f"{len(cands)} candidates at depth {i}, bound is {r}")
            cands = set(sorted(cands)[:r])
        if len(cands) < r:
            for t in itertools.product(range(self.q), repeat=i + 1):
                if t not in cands:
                    cands.add(t)
                    if len(cands) == r:
                        break
        return tuple(sorted(cands))

    def commitment(self, w: int, R_w) -> dict:
        """phi_w: abundant colors of w -> S_w."""
        i = self._depth[w] - 1
        C_w = abundant_colors(R_w, i + 1, self.r[i])
        return phi(C_w, self.subset(w), truncate=not self.strict)

    def candidate_set(self, v: int, chi: Sequence[int], memo: Optional[dict] = None):
        """f_v: candidate colorings of root..v deduced from the colors below v."""
        if memo is None:
            memo = {}
        if v in memo:
            return memo[v]
        i = self._depth[v]
        if i == self.d:
            out = tuple(itertools.product(range(self.q), repeat=i + 1))
            memo[v] = out
            return out
        excluded = set()
        restricted = None
        for w in self.children(v):
            R_w = self.candidate_set(w, chi, memo)
            phi_w = self.commitment(w, R_w)
            if chi[w] not in phi_w:
                # non-abundant color of w: few candidates of R_w remain
                restricted = {t[:i + 1] for t in R_w if t[i + 1] == chi[w]}
                break
            excluded.add(phi_w[chi[w]])
        if restricted is not None:
            cands = restricted
        else:
            cands = {t for t in itertools.product(range(self.q), repeat=i + 1) if t not in excluded}
        out = self._pad(cands, i)
        memo[v] = out
        return out

    def _guess_with(self, v: int, chi: Sequence[int], memo: dict) -> int:
        if v == 0:
            return self.candidate_set(0, chi, memo)[0][0]
        phi_w = self.commitment(v, self.candidate_set(v, chi, memo))
        chain = tuple(chi[a] for a in ancestors(v, self.N))
        for c, t in phi_w.items():
            if t == chain:
                return c
        return 0

    def _guess(self, v: int, context: Sequence[int]) -> int:
        chi = [0] * self.n
        nbrs = self.graph_adj(v)
        for u, c in zip(nbrs, context):
            chi[u] = c
        return self._guess_with(v, chi, {})

    def graph_adj(self, v: int) -> list[int]:
        below = []
        frontier = [v]
        while frontier:
            frontier = [c for u in frontier for c in self.children(u)]
            below.extend(frontier)
        return sorted(ancestors(v, self.N) + below)

    def guesses(self, g: Graph, chi: Sequence[int]) -> list[int]:
        memo: dict = {}
        return [self._guess_with(v, chi, memo) for v in range(self.n)]

    def check(self, g: Graph) -> None:
        if g.n != self.n:
            raise ValueError(f"strategy is for G_{self.d}({self.N}) with {self.n} vertices, graph has {g.n}")


def gdn_strategy(d: int, N: int, q: Optional[int] = None) -> GdnStrategy:
    return GdnStrategy(d, N, q)


register_rule("gdn")(lambda q, d, N: GdnStrategy(d, N, q))
