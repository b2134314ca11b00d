"""Simple undirected graphs, vertex orderings and the graph families of the game.

Vertices are dense integers ``0..n-1``.  Family constructors fix a canonical
numbering:

* ``clique(n)``, ``path(n)``, ``cycle(n)``: vertices in the obvious order.
* ``book(d, n)``: spine ``0..d-1`` first, then pages ``d..d+n-1``.
* ``layered(d, N)``: the complete N-ary tree of depth d in breadth-first
  (heap) order, root ``0``, children of ``v`` are ``N*v+1 .. N*v+N``, and every
  vertex joined to all of its ancestors.  The identity ordering is therefore
  depth-respecting.
"""
from __future__ import annotations

import heapq
import sys
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    # ("layered", d, N), ("book", d, n), ("clique", n) ...; None for ad-hoc graphs
    family: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        for v, nbrs in enumerate(self.adj):
            for u in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at {v}")
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if v not in self._nbr_sets[u]:
                    raise ValueError(f"adjacency not symmetric on {{{u}, {v}}}")

    @property
    def _nbr_sets(self):
        try:
            return self.__dict__["_sets"]
        except KeyError:
            sets = tuple(frozenset(a) for a in self.adj)
            object.__setattr__(self, "_sets", sets)
            return sets

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], family=None) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), family)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max(len(a) for a in self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]


@dataclass(frozen=True)
class Ordering:
    """A left-to-right arrangement of the vertices; ``perm[k]`` sits at position k."""

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("ordering is not a permutation of 0..n-1")
        object.__setattr__(self, "perm", tuple(self.perm))

    @classmethod
    def identity(cls, n: int) -> "Ordering":
        return cls(tuple(range(n)))

    @property
    def position(self) -> tuple[int, ...]:
        try:
            return self.__dict__["_pos"]
        except KeyError:
            pos = [0] * len(self.perm)
            for k, v in enumerate(self.perm):
                pos[v] = k
            pos = tuple(pos)
            object.__setattr__(self, "_pos", pos)
            return pos

    def __len__(self):
        return len(self.perm)


@dataclass(frozen=True)
class LayeredTreeSpec:
    d: int
    N: int


@dataclass(frozen=True)
class BookSpec:
    d: int
    n: int


def _check_ordering(g: Graph, order: Ordering) -> None:
    if len(order) != g.n:
        raise ValueError(f"ordering has {len(order)} vertices, graph has {g.n}")


def left_neighbors(g: Graph, order: Ordering, v: int) -> frozenset[int]:
    """Neighbors of ``v`` placed before ``v`` in ``order``."""
    _check_ordering(g, order)
    pos = order.position
    return frozenset(u for u in g.adj[v] if pos[u] < pos[v])


def left_degree(g: Graph, order: Ordering) -> int:
    """Largest number of left-neighbors of any vertex under ``order``."""
    pos = order.position
    return max(sum(1 for u in g.adj[v] if pos[u] < pos[v]) for v in range(g.n))


def degeneracy(g: Graph) -> tuple[int, Ordering]:
    """Minimum-degree peeling.

    Returns the degeneracy and an ordering in which every vertex has at most
    that many left-neighbors.  Ties on degree go to the smallest index.
    """
    deg = [len(a) for a in g.adj]
    removed = [False] * g.n
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    peeled = []
    d = 0
    while heap:
        k, v = heapq.heappop(heap)
        if removed[v] or k != deg[v]:
            continue
        removed[v] = True
        peeled.append(v)
        d = max(d, k)
        for u in g.adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    # a peeled vertex sees only later-peeled neighbors, so they go to its left
    return d, Ordering(tuple(reversed(peeled)))


def ordering_depth(g: Graph, order: Ordering) -> int:
    """Number of edges on the longest path visited left to right."""
    _check_ordering(g, order)
    pos = order.position
    depth = [0] * g.n
    for v in order.perm:
        depth[v] = max((depth[u] + 1 for u in g.adj[v] if pos[u] < pos[v]), default=0)
    return max(depth)


def vertex_depths(g: Graph, order: Ordering) -> list[int]:
    pos = order.position
    depth = [0] * g.n
    for v in order.perm:
        depth[v] = max((depth[u] + 1 for u in g.adj[v] if pos[u] < pos[v]), default=0)
    return depth


# -- families ---------------------------------------------------------------

def _check_size(n: int) -> None:
    if n < 1:
        raise ValueError("family sizes must be >= 1")
    if n > sys.maxsize:
        raise OverflowError(f"vertex count {n} exceeds the platform word")


def clique(n: int) -> Graph:
    _check_size(n)
    return Graph(n, tuple(tuple(u for u in range(n) if u != v) for v in range(n)), ("clique", n))


def edgeless(n: int) -> Graph:
    _check_size(n)
    return Graph(n, tuple(() for _ in range(n)), ("edgeless", n))


def path(n: int) -> Graph:
    _check_size(n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], ("path", n))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    _check_size(n)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], ("cycle", n))


def tree(parents: Sequence[Optional[int]]) -> Graph:
    """Tree from a parent array; exactly one entry (the root) is None."""
    n = len(parents)
    _check_size(n)
    if sum(p is None for p in parents) != 1:
        raise ValueError("a tree needs exactly one root")
    g = Graph.from_edges(n, [(v, p) for v, p in enumerate(parents) if p is not None], ("tree",))
    if len(g.edges()) != n - 1 or not _connected(g):
        raise ValueError("parent array does not describe a tree")
    return g


def _connected(g: Graph) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def book(spec: BookSpec) -> Graph:
    d, n = spec.d, spec.n
    if d < 1 or n < 0:
        raise ValueError("book needs d >= 1 and n >= 0")
    _check_size(d + n)
    edges = [(u, w) for u in range(d) for w in range(u + 1, d + n)]
    return Graph.from_edges(d + n, edges, ("book", d, n))


def layered_size(d: int, N: int) -> int:
    return sum(N ** k for k in range(d + 1))


def layered(spec: LayeredTreeSpec) -> Graph:
    """G_d(N): N-ary tree of depth d, each vertex joined to all its ancestors."""
    d, N = spec.d, spec.N
    if d < 1 or N < 1:
        raise ValueError("layered tree needs d >= 1 and N >= 1")
    n = layered_size(d, N)
    _check_size(n)
    edges = []
    for v in range(1, n):
        for a in ancestors(v, N):
            edges.append((v, a))
    return Graph.from_edges(n, edges, ("layered", d, N))


# heap-numbering arithmetic for layered trees

def parent(v: int, N: int) -> Optional[int]:
    return None if v == 0 else (v - 1) // N


def children(v: int, N: int, n: int) -> range:
    lo = N * v + 1
    return range(lo, min(lo + N, n))


def ancestors(v: int, N: int) -> list[int]:
    """Ancestors of ``v`` from the root downwards (excluding ``v``)."""
    chain = []
    while v != 0:
        v = (v - 1) // N
        chain.append(v)
    return chain[::-1]


def depth_of(v: int, N: int) -> int:
    return len(ancestors(v, N))


def descendants(v: int, N: int, n: int) -> list[int]:
    out = []
    frontier = [v]
    while frontier:
        nxt = [c for u in frontier for c in children(u, N, n)]
        out.extend(nxt)
        frontier = nxt
    return out


# -- text format ----------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse ``"n m"`` followed by m lines ``"u v"``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise ValueError("graph file must start with 'n m'")
    n, m = (int(x) for x in lines[0])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        if len(ln) != 2:
            raise ValueError(f"bad edge line: {' '.join(ln)!r}")
        edges.append((int(ln[0]), int(ln[1])))
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    es = g.edges()
    return "\n".join([f"{g.n} {len(es)}"] + [f"{u} {v}" for u, v in es]) + "\n"
