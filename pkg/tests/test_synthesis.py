import itertools

import networkx as nx
import numpy as np
import pytest

from hatguess import synthesis
from hatguess.engine import TableStrategy, verify_winning
from hatguess.errors import BudgetExceeded
from hatguess.graphs import Graph, clique, cycle, path, tree
from hatguess.synthesis import (IMPOSSIBLE, OVER_BUDGET, WINNING, exists_winning_strategy,
                                hat_guessing_number, line_patterns, scan_q, symmetry_choices)

from oracles import brute_force_winnable, profile_count, small_graphs


def relabel(g, s, perms):
    """Strategy after renaming the colors of every vertex v by perms[v]."""
    q = s.q
    inv = [np.argsort(p) for p in perms]
    tables = []
    for v in range(g.n):
        nbrs = g.adj[v]
        tab = []
        for ctx in itertools.product(range(q), repeat=len(nbrs)):
            old = tuple(int(inv[u][c]) for u, c in zip(nbrs, ctx))
            tab.append(int(perms[v][s.guess(v, old)]))
        tables.append(tab)
    return TableStrategy(q, tables)


@pytest.mark.parametrize("g,q,status", [
    (clique(2), 2, WINNING),
    (path(3), 2, WINNING),
    (path(3), 3, IMPOSSIBLE),
    (cycle(4), 3, WINNING),
    (clique(3), 3, WINNING),
    (clique(3), 4, IMPOSSIBLE),
    (clique(4), 4, WINNING),
    (path(4), 3, IMPOSSIBLE),
    (tree([None, 0, 0, 0]), 3, IMPOSSIBLE),
])
def test_decisions(g, q, status):
    res = exists_winning_strategy(g, q)
    assert res.status == status
    if res.winning:
        assert verify_winning(g, q, res.strategy).winning


def test_hat_guessing_number_examples():
    assert hat_guessing_number(clique(3), 4) == 3
    assert hat_guessing_number(path(4), 3) == 2
    assert hat_guessing_number(tree([None, 0, 0, 0]), 3) == 2


def test_q_one_is_winning():
    res = exists_winning_strategy(path(3), 1)
    assert res.winning


def test_budgets():
    res = exists_winning_strategy(cycle(5), 3, node_budget=50)
    assert res.status == OVER_BUDGET and res.stats.nodes > 50
    with pytest.raises(BudgetExceeded):
        exists_winning_strategy(clique(6), 6, size_budget=1000)
    with pytest.raises(BudgetExceeded):
        scan_q(cycle(5), 3, node_budget=50)


def test_monotone_flag_stops_early():
    full = scan_q(clique(2), 4)
    assert [r.status for r in full.values()] == [WINNING, WINNING, IMPOSSIBLE, IMPOSSIBLE]
    short = scan_q(clique(2), 4, monotone=True)
    assert list(short) == [1, 2, 3]


def test_line_patterns():
    assert [len(line_patterns(q)) for q in range(1, 7)] == [1, 2, 3, 5, 7, 11]
    assert line_patterns(3) == [(0, 0, 0), (0, 0, 1), (0, 1, 2)]
    for q in range(1, 6):
        for w in line_patterns(q):
            assert w[0] == 0 and all(b - a in (0, 1) for a, b in zip(w, w[1:]))


def test_symmetry_choices_touch_each_table_once():
    g = cycle(6)
    steps = symmetry_choices(g, 3)
    owners = [{v for alt in step for v, _, _ in alt} for step in steps]
    assert all(len(o) == 1 for o in owners)
    assert len({next(iter(o)) for o in owners}) == len(steps)


@pytest.mark.parametrize("q", [2, 3])
def test_symmetry_breaking_preserves_answers(q):
    compared = 0
    for n, adj in small_graphs(4):
        g = Graph(n, tuple(tuple(a) for a in adj))
        plain = synthesis._CoverSearch(g, q).run(2 * 10 ** 5)
        if plain != OVER_BUDGET:
            assert plain == exists_winning_strategy(g, q).status
            compared += 1
    assert compared >= 17


def test_agrees_with_brute_force_on_small_profiles():
    checked = 0
    for n, adj in small_graphs(3):
        for q in range(1, 5):
            if profile_count(adj, q) > 10 ** 5:
                continue
            g = Graph(n, tuple(tuple(a) for a in adj))
            assert exists_winning_strategy(g, q).winning == brute_force_winnable(adj, q)
            checked += 1
    assert checked >= 15


@pytest.mark.parametrize("g,q", [(cycle(4), 3), (clique(3), 3), (path(3), 2), (clique(4), 4)])
def test_relabeled_strategies_still_win(g, q):
    s = exists_winning_strategy(g, q).strategy
    rng = np.random.default_rng(q)
    for _ in range(5):
        perms = [rng.permutation(q) for _ in range(g.n)]
        assert verify_winning(g, q, relabel(g, s, perms)).winning


def test_stats_are_reported():
    res = exists_winning_strategy(cycle(4), 3)
    assert res.stats.nodes > 0 and res.stats.seconds >= 0


def test_disjoint_union_wins_iff_a_component_wins():
    from hatguess.synthesis import components
    g = Graph.from_edges(6, [(0, 3), (1, 4), (1, 5), (4, 5)])
    assert components(g) == [[0, 3], [1, 4, 5], [2]]
    res = exists_winning_strategy(g, 3)
    assert res.winning and verify_winning(g, 3, res.strategy).winning
    assert not exists_winning_strategy(g, 4).winning
    assert not exists_winning_strategy(Graph.from_edges(4, [(0, 1), (2, 3)]), 3).winning
    assert not exists_winning_strategy(Graph.from_edges(7, []), 5).winning
