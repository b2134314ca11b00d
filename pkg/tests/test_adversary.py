import math
import random

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import assume, given, settings

from hatguess.adversary import (bound_report, budgets, depth_bound, fool, natural_ordering,
                                power_tower_bound, sylvester)
from hatguess.engine import RuleStrategy, constant_strategy, copy_strategy, evaluate, random_strategy
from hatguess.errors import BudgetExceeded
from hatguess.graphs import (LayeredTreeSpec, Ordering, clique, depth_of, edgeless, layered,
                             ordering_depth, path)

from gen import graded_graphs, graphs


def hashed_strategy(q, seed):
    """Pseudo-random total strategy that needs no tables."""
    return RuleStrategy("hashed", {"seed": seed}, q,
                        lambda v, ctx: random.Random(hash((seed, v) + tuple(ctx))).randrange(q))


def test_sylvester_values():
    assert [sylvester(k) for k in range(5)] == [2, 3, 7, 43, 1807]
    assert sylvester(6) == 10650056950807
    with pytest.raises(OverflowError):
        sylvester(7)
    assert sylvester(7, limit=None) == 10650056950807 ** 2 - 10650056950807 + 1


def test_budget_examples():
    assert budgets(edgeless(4), Ordering.identity(4)) == [2, 2, 2, 2]
    assert budgets(clique(3), Ordering((0, 1, 2))) == [2, 3, 7]


@pytest.mark.parametrize("d,N", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_layered_budgets_are_sylvester(d, N):
    g = layered(LayeredTreeSpec(d, N))
    t = budgets(g, Ordering.identity(g.n))
    assert t == [sylvester(depth_of(v, N)) for v in range(g.n)]


def test_budget_overflow_reported():
    with pytest.raises(OverflowError):
        budgets(clique(9), Ordering.identity(9))


def test_fool_examples():
    g = edgeless(1)
    assert fool(g, Ordering.identity(1), 2, constant_strategy(2)) == (1,)
    g = clique(2)
    chi = fool(g, Ordering((0, 1)), 3, copy_strategy(3))
    assert chi[0] < 2 and chi[1] < 3
    assert evaluate(g, 3, copy_strategy(3), chi) == frozenset()


def test_fool_preconditions():
    with pytest.raises(ValueError):
        fool(clique(3), Ordering.identity(3), 6, constant_strategy(6))
    with pytest.raises(BudgetExceeded):
        fool(clique(3), Ordering.identity(3), 7, constant_strategy(7), budget=3)


def test_fool_on_layered_random_tables():
    g = layered(LayeredTreeSpec(2, 2))
    order = Ordering.identity(g.n)
    rng = np.random.default_rng(5)
    for _ in range(50):
        s = random_strategy(g, 7, rng)
        chi = fool(g, order, 7, s)
        assert evaluate(g, 7, s, chi) == frozenset()


def test_bound_report_examples():
    rep = bound_report(layered(LayeredTreeSpec(2, 4)))
    assert rep.budget_bound == 7 and rep.sylvester_bound == 7
    assert rep.depth == 2 and rep.left_degree == 2
    assert depth_bound(2, 1) == 5 <= power_tower_bound(2, 1) == 16
    rep = bound_report(path(4))
    assert rep.max_degree == 2 and rep.lll_bound == math.ceil(math.e * 2)
    g = clique(4)
    assert bound_report(g).lll_bound == 9  # max degree 3
    assert bound_report(g).sylvester_bound is None


def test_bound_report_flags_overflow():
    rep = bound_report(clique(12))
    assert "budget_bound" in rep.overflow
    assert rep.budget_bound == sylvester(11, limit=None)
    rep = bound_report(clique(14))
    assert rep.budget_bound is None and dict(rep.items())["budget_bound"] == "overflow"


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("D", [1, 2, 3])
def test_depth_bound_below_power_tower(d, D):
    assert depth_bound(d, D) <= power_tower_bound(d, D)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_budgets_below_depth_bound(d, D, data):
    g = data.draw(graded_graphs(d, D))
    order = Ordering.identity(g.n)
    assert ordering_depth(g, order) <= D
    assert max(budgets(g, order, limit=None)) <= depth_bound(d, D)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8), st.integers(0, 2 ** 31), st.data())
def test_fool_property(g, seed, data):
    order = natural_ordering(g)
    t = budgets(g, order, limit=None)
    assume(max(t) <= 5000)
    q = max(t) + data.draw(st.integers(0, 2))
    s = hashed_strategy(q, seed)
    chi = fool(g, order, q, s, budget=10 ** 6)
    assert all(c < tv for c, tv in zip(chi, t))
    assert evaluate(g, q, s, chi) == frozenset()
