"""Upper-bound machinery: color budgets, the fooling adversary and bound formulas.

Given an ordering, vertex v gets a budget t(v) = 1 + prod of t(u) over its
left-neighbors.  The adversary colors vertices right to left, each v inside
``range(t(v))``, dodging every guess v could still make; so no strategy wins
with max(t) colors.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from .engine import Strategy
from .errors import BudgetExceeded
from .graphs import Graph, Ordering, degeneracy, left_degree, ordering_depth

INT64_MAX = 2 ** 63 - 1
# cap on exact big-integer bounds carried in reports
REPORT_BITS = 4096


def sylvester(k: int, limit: Optional[int] = INT64_MAX) -> int:
    """k-th term of 2, 3, 7, 43, 1807, ..."""
    if k < 0:
        raise ValueError("k must be non-negative")
    s = 2
    for _ in range(k):
        s = s * s - s + 1
        if limit is not None and s > limit:
            raise OverflowError(f"sylvester({k}) exceeds {limit}")
    return s


def budgets(g: Graph, order: Ordering, limit: Optional[int] = INT64_MAX) -> list[int]:
    """Budget t(v) for every vertex (indexed by vertex, not by position)."""
    if len(order) != g.n:
        raise ValueError("ordering does not match graph")
    pos = order.position
    t = [0] * g.n
    for v in order.perm:
        prod = 1
        for u in g.adj[v]:
            if pos[u] < pos[v]:
                prod *= t[u]
        t[v] = prod + 1
        if limit is not None and t[v] > limit:
            raise OverflowError(f"budget of vertex {v} exceeds {limit}")
    return t


def depth_bound(d: int, D: int, max_bits: Optional[int] = None) -> Optional[int]:
    """a_D from a_0 = 2, a_k = a_{k-1}^d + 1; None if it outgrows ``max_bits``."""
    a = 2
    for _ in range(D):
        if max_bits is not None and (a.bit_length() - 1) * d > max_bits:
            return None
        a = a ** d + 1
    return a


def power_tower_bound(d: int, D: int, max_bits: Optional[int] = None) -> Optional[int]:
    """2^(d^(D+1))."""
    e = d ** (D + 1)
    if max_bits is not None and e > max_bits:
        return None
    return 2 ** e


def fool(g: Graph, order: Ordering, q: int, s: Strategy, budget: int = 10 ** 7) -> tuple[int, ...]:
    """All-wrong coloring with chi[v] < t(v), built right to left.

    For each vertex the adversary enumerates every color pattern its still
    unfixed left-neighbors may take inside their budgets, collects the guesses
    v could make, and gives v the least unguessed color below t(v).
    """
    t = budgets(g, order, limit=None)
    if q < max(t):
        raise ValueError(f"need q >= max budget {max(t)}, got q={q}")
    if s.q != q:
        raise ValueError(f"strategy is for {s.q} colors, game has {q}")
    pos = order.position
    chi: list[Optional[int]] = [None] * g.n
    for v in reversed(order.perm):
        nbrs = g.adj[v]
        left = [k for k, u in enumerate(nbrs) if pos[u] < pos[v]]
        if t[v] - 1 > budget:
            raise BudgetExceeded(f"vertex {v} has {t[v] - 1} left contexts, budget is {budget}")
        ctx = [chi[u] for u in nbrs]
        seen = set()
        for combo in itertools.product(*(range(t[nbrs[k]]) for k in left)):
            for k, c in zip(left, combo):
                ctx[k] = c
            seen.add(s.guess(v, ctx))
        chi[v] = next(c for c in range(t[v]) if c not in seen)
    return tuple(chi)


@dataclass(frozen=True)
class BoundReport:
    degeneracy: int
    left_degree: int
    depth: int
    max_degree: int
    lll_bound: int
    budget_bound: Optional[int]
    depth_bound: Optional[int]
    power_tower_bound: Optional[int]
    sylvester_bound: Optional[int] = None
    # names of fields too large for a signed 64-bit word (None = not computed)
    overflow: tuple[str, ...] = field(default=())

    def items(self):
        keys = ["degeneracy", "left_degree", "depth", "max_degree", "lll_bound",
                "budget_bound", "depth_bound", "power_tower_bound"]
        if self.sylvester_bound is not None or "sylvester_bound" in self.overflow:
            keys.append("sylvester_bound")
        for k in keys:
            val = getattr(self, k)
            yield k, ("overflow" if val is None else val)


def natural_ordering(g: Graph) -> Ordering:
    """Depth-respecting identity for layered and book graphs, else the degeneracy ordering."""
    if g.family and g.family[0] in ("layered", "book"):
        return Ordering.identity(g.n)
    return degeneracy(g)[1]


def bound_report(g: Graph, order: Optional[Ordering] = None) -> BoundReport:
    d_min, _ = degeneracy(g)
    if order is None:
        order = natural_ordering(g)
    d = left_degree(g, order)
    D = ordering_depth(g, order)
    delta = g.max_degree()
    try:
        budget = max(budgets(g, order, limit=2 ** REPORT_BITS))
    except OverflowError:
        budget = None
    a_D = depth_bound(d, D, max_bits=REPORT_BITS)
    tower = power_tower_bound(d, D, max_bits=REPORT_BITS)
    syl = None
    syl_wanted = bool(g.family) and g.family[0] == "layered"
    if syl_wanted:
        try:
            syl = sylvester(g.family[1], limit=2 ** REPORT_BITS)
        except OverflowError:
            syl = None
    values = {"budget_bound": budget, "depth_bound": a_D, "power_tower_bound": tower,
              "sylvester_bound": syl}
    over = tuple(k for k, v in values.items()
                 if (v is None and (k != "sylvester_bound" or syl_wanted))
                 or (v is not None and v > INT64_MAX))
    return BoundReport(
        degeneracy=d_min, left_degree=d, depth=D, max_degree=delta,
        lll_bound=math.ceil(math.e * delta), budget_bound=budget, depth_bound=a_D,
        power_tower_bound=tower, sylvester_bound=syl, overflow=over,
    )
