"""Game semantics: strategies, evaluation and exhaustive verification.

A vertex sees the colors of its neighbors listed in ascending vertex index.
Tabulated strategies index that context as a base-q number with the last
neighbor varying fastest.
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, StrategyFormatError
from .graphs import Graph

log = logging.getLogger(__name__)

DEFAULT_VERIFY_BUDGET = 2 ** 40


def context_index(context: Sequence[int], q: int) -> int:
    idx = 0
    for c in context:
        idx = idx * q + c
    return idx


def context_of(g: Graph, chi: Sequence[int], v: int) -> tuple[int, ...]:
    return tuple(chi[u] for u in g.adj[v])


class Strategy:
    """Deterministic guessing rule for every vertex, over ``q`` colors."""

    q: int

    def guess(self, v: int, context: Sequence[int]) -> int:
        raise NotImplementedError

    def guesses(self, g: Graph, chi: Sequence[int]) -> list[int]:
        return [self.guess(v, context_of(g, chi, v)) for v in range(g.n)]

    def tables(self, g: Graph) -> list[list[int]]:
        """Tabulate every vertex's rule over all q^deg contexts."""
        out = []
        for v in range(g.n):
            contexts = itertools.product(range(self.q), repeat=g.degree(v))
            out.append([self.guess(v, ctx) for ctx in contexts])
        return out

    def check(self, g: Graph) -> None:
        pass


class TableStrategy(Strategy):
    def __init__(self, q: int, tables: Sequence[Sequence[int]]):
        if q < 1:
            raise ValueError("palette needs q >= 1")
        self.q = q
        self._tables = [np.asarray(t, dtype=np.int64) for t in tables]
        for v, t in enumerate(self._tables):
            if t.ndim != 1:
                raise StrategyFormatError(f"table for vertex {v} is not one-dimensional")
            if t.size and (t.min() < 0 or t.max() >= q):
                raise StrategyFormatError(f"table for vertex {v} has a guess outside 0..{q - 1}")

    @property
    def n(self) -> int:
        return len(self._tables)

    def guess(self, v, context):
        return int(self._tables[v][context_index(context, self.q)])

    def tables(self, g):
        self.check(g)
        return [t.tolist() for t in self._tables]

    def table(self, v) -> np.ndarray:
        return self._tables[v]

    def check(self, g):
        if len(self._tables) != g.n:
            raise ValueError(f"strategy has {len(self._tables)} vertices, graph has {g.n}")
        for v, t in enumerate(self._tables):
            if t.size != self.q ** g.degree(v):
                raise StrategyFormatError(
                    f"vertex {v}: table length {t.size} != q^deg = {self.q ** g.degree(v)}")

    def __eq__(self, other):
        return (isinstance(other, TableStrategy) and self.q == other.q
                and len(self._tables) == len(other._tables)
                and all(np.array_equal(a, b) for a, b in zip(self._tables, other._tables)))


class RuleStrategy(Strategy):
    """A strategy computed on demand and serialized by name and parameters."""

    def __init__(self, name: str, params: dict, q: int, rule: Callable[[int, Sequence[int]], int]):
        self.name = name
        self.params = dict(params)
        self.q = q
        self._rule = rule

    def guess(self, v, context):
        return self._rule(v, context)


def random_strategy(g: Graph, q: int, rng: np.random.Generator) -> TableStrategy:
    return TableStrategy(q, [rng.integers(0, q, size=q ** g.degree(v)) for v in range(g.n)])


def constant_strategy(q: int, c: int = 0) -> RuleStrategy:
    if not 0 <= c < q:
        raise ValueError("constant guess outside the palette")
    return RuleStrategy("constant", {"c": c}, q, lambda v, ctx: c)


def copy_strategy(q: int) -> RuleStrategy:
    """Guess the color of the lowest-indexed visible neighbor (0 when alone)."""
    return RuleStrategy("copy", {}, q, lambda v, ctx: ctx[0] if ctx else 0)


# -- evaluation -------------------------------------------------------------------

def _check_assignment(g: Graph, q: int, chi: Sequence[int]) -> None:
    if len(chi) != g.n:
        raise ValueError(f"assignment has length {len(chi)}, graph has {g.n} vertices")
    for c in chi:
        if not 0 <= c < q:
            raise ValueError(f"color {c} outside palette 0..{q - 1}")


def evaluate(g: Graph, q: int, s: Strategy, chi: Sequence[int]) -> frozenset[int]:
    """Vertices whose guess on ``chi`` is correct."""
    _check_assignment(g, q, chi)
    if s.q != q:
        raise ValueError(f"strategy is for {s.q} colors, game has {q}")
    s.check(g)
    return frozenset(v for v, c in enumerate(s.guesses(g, chi)) if c == chi[v])


@dataclass(frozen=True)
class VerifyOutcome:
    winning: bool
    counterexample: Optional[tuple[int, ...]] = None


def _decode(idx: int, n: int, q: int) -> list[int]:
    chi = [0] * n
    for k in range(n - 1, -1, -1):
        idx, chi[k] = divmod(idx, q)
    return chi


def _scan(adj, tables, n, q, start, stop):
    """First all-wrong coloring index in [start, stop), walking an odometer."""
    # weight of u's color inside v's context index
    watchers = [[] for _ in range(n)]
    for v in range(n):
        deg = len(adj[v])
        for k, u in enumerate(adj[v]):
            watchers[u].append((v, q ** (deg - 1 - k)))
    chi = _decode(start, n, q)
    ctx = [0] * n
    for v in range(n):
        for u, w in ((u, q ** (len(adj[v]) - 1 - k)) for k, u in enumerate(adj[v])):
            ctx[v] += chi[u] * w
    right = [tables[v][ctx[v]] == chi[v] for v in range(n)]
    ncorrect = sum(right)
    last = n - 1
    for idx in range(start, stop):
        if ncorrect == 0:
            return idx
        if idx + 1 == stop:
            break
        k = last
        while True:
            old = chi[k]
            if old + 1 < q:
                chi[k] = old + 1
                delta = 1
            else:
                chi[k] = 0
                delta = -old
            touched = [k]
            for v, w in watchers[k]:
                ctx[v] += delta * w
                touched.append(v)
            for v in touched:
                r = tables[v][ctx[v]] == chi[v]
                if r != right[v]:
                    right[v] = r
                    ncorrect += 1 if r else -1
            if delta == 1:
                break
            k -= 1
    return None


def verify_winning(g: Graph, q: int, s: Strategy, budget: int = DEFAULT_VERIFY_BUDGET,
                   jobs: int = 1) -> VerifyOutcome:
    """Check all q^n colorings; report the lexicographically least losing one."""
    if s.q != q:
        raise ValueError(f"strategy is for {s.q} colors, game has {q}")
    total = q ** g.n
    if total > budget:
        raise BudgetExceeded(f"verification needs {q}^{g.n} = {total} colorings, budget is {budget}")
    tables = s.tables(g)
    if jobs <= 1 or total < 4096:
        hit = _scan(g.adj, tables, g.n, q, 0, total)
    else:
        bounds = [int(total * k // jobs) for k in range(jobs + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_scan, g.adj, tables, g.n, q, a, b)
                    for a, b in zip(bounds, bounds[1:]) if a < b]
            hits = [f.result() for f in futs]
        hit = next((h for h in hits if h is not None), None)
    if hit is None:
        return VerifyOutcome(True)
    return VerifyOutcome(False, tuple(_decode(hit, g.n, q)))


# -- strategy files ---------------------------------------------------------------

_RULES: dict[str, Callable[..., RuleStrategy]] = {}


def register_rule(name: str):
    def deco(factory):
        _RULES[name] = factory
        return factory
    return deco


register_rule("constant")(lambda q, c=0: constant_strategy(q, c))
register_rule("copy")(lambda q: copy_strategy(q))


def make_rule(name: str, q: int, **params) -> RuleStrategy:
    from . import constructive  # noqa: F401  registers clique/gdn

    if name not in _RULES:
        raise StrategyFormatError(f"unknown rule {name!r}")
    s = _RULES[name](q=q, **params)
    if s.q != q:
        raise StrategyFormatError(f"rule {name} does not play with {q} colors")
    return s


def format_strategy(g: Graph, s: Strategy) -> str:
    lines = [f"{g.n} {s.q}"]
    if isinstance(s, RuleStrategy):
        params = " ".join(f"{k}={v}" for k, v in s.params.items())
        rule = f"rule {s.name} {params}".rstrip()
        lines += [rule] * g.n
    else:
        for v, t in enumerate(s.tables(g)):
            lines.append(f"table {g.degree(v)} " + " ".join(map(str, t)))
    return "\n".join(lines) + "\n"


def parse_strategy(text: str) -> Strategy:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise StrategyFormatError("strategy file must start with 'n q'")
    try:
        n, q = (int(x) for x in lines[0])
    except ValueError:
        raise StrategyFormatError("header 'n q' must be integers") from None
    body = lines[1:]
    if len(body) != n:
        raise StrategyFormatError(f"expected {n} vertex lines, found {len(body)}")
    kinds = {ln[0] for ln in body}
    if kinds == {"rule"}:
        if len({tuple(ln) for ln in body}) != 1:
            raise StrategyFormatError("rule lines must agree across vertices")
        name, *kv = body[0][1:]
        params = {}
        for item in kv:
            key, _, val = item.partition("=")
            if not val:
                raise StrategyFormatError(f"bad rule parameter {item!r}")
            params[key] = int(val)
        return make_rule(name, q, **params)
    if kinds != {"table"}:
        raise StrategyFormatError("vertex lines must all be 'table ...' or all be 'rule ...'")
    tables = []
    for v, ln in enumerate(body):
        try:
            deg = int(ln[1])
            vals = [int(x) for x in ln[2:]]
        except (IndexError, ValueError):
            raise StrategyFormatError(f"vertex {v}: malformed table line") from None
        if len(vals) != q ** deg:
            raise StrategyFormatError(f"vertex {v}: table length {len(vals)} != q^deg = {q ** deg}")
        tables.append(vals)
    return TableStrategy(q, tables)


def load_strategy(path) -> Strategy:
    with open(path) as f:
        return parse_strategy(f.read())


def store_strategy(path, g: Graph, s: Strategy) -> None:
    with open(path, "w") as f:
        f.write(format_strategy(g, s))
