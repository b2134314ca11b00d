"""Hat guessing numbers of small cliques, paths, cycles and stars by exhaustive search."""
import argparse
import time

from hatguess.graphs import LayeredTreeSpec, clique, cycle, layered, path
from hatguess.synthesis import scan_q


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-q", type=int, default=4)
    ap.add_argument("--node-budget", type=int, default=10 ** 7)
    ap.add_argument("--big", action="store_true", help="include C6 (a few minutes)")
    a = ap.parse_args()
    cases = [("K2", clique(2)), ("K3", clique(3)), ("K4", clique(4)), ("P3", path(3)), ("P4", path(4)),
             ("star4", layered(LayeredTreeSpec(1, 4))), ("C4", cycle(4)), ("C5", cycle(5))]
    if a.big:
        cases.append(("C6", cycle(6)))
    for name, g in cases:
        t0 = time.perf_counter()
        res = scan_q(g, min(a.max_q, g.n + 1), a.node_budget, monotone=True)
        hg = max(q for q, r in res.items() if r.winning)
        nodes = sum(r.stats.nodes for r in res.values())
        print(f"{name}\thg={hg}\tnodes={nodes}\t{time.perf_counter() - t0:.1f}s", flush=True)


if __name__ == "__main__":
    main()
