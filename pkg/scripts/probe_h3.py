"""Random probe of coverability in 3-space: fraction of coverable k-sets of a box, by k."""
import argparse

from hatguess.covering import h_bounds, search_h


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--box", default="3,3,4")
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    box = tuple(int(x) for x in a.box.split(","))
    hb = h_bounds(3)
    print(f"known\tlower={hb.lower}\tupper={hb.upper}")
    for size in range(hb.lower, hb.upper + 2):
        rep = search_h(3, box, size, mode="random", trials=a.trials, seed=a.seed)
        print(f"{size}\tcoverable={rep.coverable}\tnoncoverable={rep.noncoverable}", flush=True)


if __name__ == "__main__":
    main()
