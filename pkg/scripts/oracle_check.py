"""Compare the search against brute-force profile enumeration on every small graph."""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracles import brute_force_winnable, profile_count, small_graphs  # noqa: E402

from hatguess.graphs import Graph  # noqa: E402
from hatguess.synthesis import exists_winning_strategy  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--max-q", type=int, default=5)
    ap.add_argument("--profiles", type=float, default=1e7, help="skip instances with more profiles")
    a = ap.parse_args()
    t0 = time.perf_counter()
    count = mismatches = 0
    for n, adj in small_graphs(a.max_n):
        g = Graph(n, tuple(tuple(x) for x in adj))
        for q in range(1, a.max_q + 1):
            if profile_count(adj, q) > a.profiles:
                continue
            count += 1
            ours, brute = exists_winning_strategy(g, q).winning, brute_force_winnable(adj, q)
            if ours != brute:
                mismatches += 1
                print(f"mismatch\t{adj}\tq={q}\tsearch={ours}\tbrute={brute}")
    print(f"instances\t{count}\nmismatches\t{mismatches}\tseconds\t{time.perf_counter() - t0:.1f}")


if __name__ == "__main__":
    main()
