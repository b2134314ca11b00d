"""Run the budget adversary against random strategies and report how often it wins (always)."""
import argparse

import numpy as np

from hatguess.adversary import budgets, fool, natural_ordering
from hatguess.engine import evaluate, random_strategy
from hatguess.graphs import BookSpec, LayeredTreeSpec, book, clique, cycle, layered


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    rng = np.random.default_rng(a.seed)
    for name, g in [("K3", clique(3)), ("C5", cycle(5)), ("G1,5", layered(LayeredTreeSpec(1, 5))),
                    ("G2,2", layered(LayeredTreeSpec(2, 2))), ("B2,3", book(BookSpec(2, 3)))]:
        order = natural_ordering(g)
        q = max(budgets(g, order))
        fooled = 0
        for _ in range(a.trials):
            s = random_strategy(g, q, rng)
            fooled += not evaluate(g, q, s, fool(g, order, q, s))
        print(f"{name}\tq={q}\tfooled={fooled}/{a.trials}")


if __name__ == "__main__":
    main()
