import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from hatguess.graphs import (BookSpec, Graph, LayeredTreeSpec, Ordering, ancestors, book, children,
                             clique, cycle, degeneracy, edgeless, format_graph, layered, layered_size,
                             left_degree, left_neighbors, ordering_depth, parent, parse_graph, path,
                             tree, vertex_depths)

from gen import graphs
from oracles import degeneracy_brute


def test_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(2, ((1,), ()))
    with pytest.raises(ValueError):
        Graph(1, ((0,),))
    with pytest.raises(ValueError):
        Graph(0, ())


def test_clique_degeneracy():
    d, order = degeneracy(clique(4))
    assert d == 3
    assert left_degree(clique(4), order) == 3


def test_path_is_one_degenerate():
    assert degeneracy(path(5))[0] == 1


def test_layered_degeneracy_and_depth():
    g = layered(LayeredTreeSpec(2, 3))
    assert degeneracy(g)[0] == 2
    ident = Ordering.identity(g.n)
    assert left_degree(g, ident) == 2
    assert ordering_depth(g, ident) == 2


def test_left_neighbors_examples():
    g = clique(3)
    order = Ordering((0, 1, 2))
    assert left_neighbors(g, order, 0) == frozenset()
    assert left_neighbors(g, order, 2) == {0, 1}
    g = layered(LayeredTreeSpec(2, 2))
    leaf = 3
    assert left_neighbors(g, Ordering.identity(g.n), leaf) == {0, 1}


def test_ordering_depth_examples():
    assert ordering_depth(edgeless(4), Ordering.identity(4)) == 0
    for perm in itertools.permutations(range(3)):
        assert ordering_depth(clique(3), Ordering(perm)) == 2
    for d in (1, 2, 3):
        g = layered(LayeredTreeSpec(d, 2))
        assert ordering_depth(g, Ordering.identity(g.n)) == d


def test_families():
    assert clique(3).edges() == [(0, 1), (0, 2), (1, 2)]
    b = book(BookSpec(2, 3))
    assert b.n == 5
    assert b.has_edge(0, 1)
    assert all(b.has_edge(s, p) for s in (0, 1) for p in (2, 3, 4))
    assert not any(b.has_edge(p, r) for p, r in itertools.combinations((2, 3, 4), 2))
    star = layered(LayeredTreeSpec(1, 4))
    assert star.n == 5 and star.degree(0) == 4 and all(star.degree(v) == 1 for v in range(1, 5))
    assert cycle(5).degree(0) == 2 and path(4).degree(0) == 1


@pytest.mark.parametrize("d,N", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_layered_size_and_heap_numbering(d, N):
    g = layered(LayeredTreeSpec(d, N))
    assert g.n == layered_size(d, N)
    if N > 1:
        assert g.n == (N ** (d + 1) - 1) // (N - 1)
    for v in range(1, g.n):
        assert v in children(parent(v, N), N, g.n)
        assert set(g.adj[v]) >= set(ancestors(v, N))
        assert left_neighbors(g, Ordering.identity(g.n), v) == set(ancestors(v, N))


@pytest.mark.parametrize("d,n", [(1, 1), (2, 3), (3, 5)])
def test_book_degeneracy(d, n):
    assert degeneracy(book(BookSpec(d, n)))[0] == d


@pytest.mark.parametrize("d,N", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_layered_degeneracy_invariant(d, N):
    assert degeneracy(layered(LayeredTreeSpec(d, N)))[0] == d


def test_family_size_overflow():
    with pytest.raises(OverflowError):
        layered(LayeredTreeSpec(40, 10 ** 6))
    with pytest.raises(OverflowError):
        book(BookSpec(2, 2 ** 70))


def test_tree_constructor():
    g = tree([None, 0, 0, 1])
    assert g.edges() == [(0, 1), (0, 2), (1, 3)]
    with pytest.raises(ValueError):
        tree([None, None])


def test_graph_file_round_trip():
    g = cycle(5)
    assert parse_graph(format_graph(g)) == g
    with pytest.raises(ValueError):
        parse_graph("3 2\n0 1\n")


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6))
def test_degeneracy_is_minimal(g):
    d, order = degeneracy(g)
    assert left_degree(g, order) == d
    assert d == degeneracy_brute([list(a) for a in g.adj])


@settings(max_examples=80, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_depth_is_longest_increasing_path(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    order = Ordering(tuple(perm))
    depths = vertex_depths(g, order)
    pos = order.position
    # longest left-to-right path by brute force over vertex sequences
    best = 0
    for v in range(g.n):
        stack = [(v, 0)]
        while stack:
            u, k = stack.pop()
            best = max(best, k)
            stack.extend((w, k + 1) for w in g.adj[u] if pos[w] > pos[u])
    assert ordering_depth(g, order) == best == max(depths, default=0)
