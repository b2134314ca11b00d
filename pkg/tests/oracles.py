"""Brute-force reference implementations, independent of the package internals."""
import itertools
from math import prod

import networkx as nx


def colorings(n, q):
    return itertools.product(range(q), repeat=n)


def all_wrong(adj, q, guess):
    """Every coloring on which no vertex guesses right; ``guess(v, ctx)`` with ctx by ascending neighbor."""
    out = []
    for chi in colorings(len(adj), q):
        if all(guess(v, tuple(chi[u] for u in sorted(adj[v]))) != chi[v] for v in range(len(adj))):
            out.append(chi)
    return out


def profile_count(adj, q):
    return prod(q ** (q ** len(a)) for a in adj)


def _vertex_masks(adj, q, v):
    """Distinct sets (as bitmasks over colorings) on which some table of v is right."""
    n = len(adj)
    nbrs = sorted(adj[v])
    cols = list(colorings(n, q))
    ctx_of = []
    for chi in cols:
        k = 0
        for u in nbrs:
            k = k * q + chi[u]
        ctx_of.append(k)
    masks = set()
    for table in itertools.product(range(q), repeat=q ** len(nbrs)):
        m = 0
        for i, chi in enumerate(cols):
            if table[ctx_of[i]] == chi[v]:
                m |= 1 << i
        masks.add(m)
    return masks


def brute_force_winnable(adj, q):
    """Does some strategy profile cover every coloring?  Folds vertices one at a time."""
    full = (1 << q ** len(adj)) - 1
    reach = {0}
    for v in range(len(adj)):
        masks = _vertex_masks(adj, q, v)
        reach = {r | m for r in reach for m in masks}
        if full in reach:
            return True
    return full in reach


def small_graphs(max_n=4):
    """Adjacency lists of every graph on 1..max_n vertices (up to isomorphism)."""
    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= max_n:
            yield g.number_of_nodes(), [sorted(g.adj[v]) for v in range(g.number_of_nodes())]


def degeneracy_brute(adj):
    """Least max left-degree over all orderings."""
    n = len(adj)
    best = n
    for perm in itertools.permutations(range(n)):
        pos = {v: i for i, v in enumerate(perm)}
        best = min(best, max((sum(pos[u] < pos[v] for u in adj[v]) for v in range(n)), default=0))
    return best
