"""Command line front end.  Every report line is ``key<TAB>value``.

Exit status: 0 definitive answer, 1 usage or format error, 2 budget exceeded.
"""
from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from typing import Optional, Sequence

import numpy as np

from . import adversary, constructive, covering, engine, synthesis
from .errors import BudgetExceeded, StrategyFormatError
from .graphs import (BookSpec, Graph, LayeredTreeSpec, Ordering, book, clique, cycle, edgeless,
                     layered, parse_graph, path)

FORMATS = """\
file formats (tokens are separated by blanks, one record per line):

  graph      := "n m" NL  ( "u v" NL ){m}           0 <= u, v < n, u != v
  ordering   := vertex ( WS vertex ){n-1}            a permutation of 0..n-1
  strategy   := "n q" NL  ( vertexline NL ){n}
  vertexline := "table" deg guess{q^deg}              contexts list the neighbors'
                                                      colors by ascending neighbor
                                                      index, last neighbor fastest
              | "rule" name ( key "=" int )*          same line for every vertex
  pointset   := "d k" NL  ( coord{d} NL ){k}          coord >= 0, points distinct
  cover      := ( index WS axis NL ){k}               axis in 1..d

graph shorthand: Kn clique, Cn cycle, Pn path, En edgeless, Bd,n book
(spine 0..d-1, then pages), Gd,N layered clique-tree; anything else is read
as a graph file.
"""

log = logging.getLogger("hatguess")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


_SHORT = re.compile(r"^([KCPEBG])(\d+)(?:,(\d+))?$")


def parse_graph_arg(text: str) -> Graph:
    m = _SHORT.match(text)
    if m and not os.path.exists(text):
        kind, a, b = m.group(1), int(m.group(2)), m.group(3)
        two = kind in "BG"
        if two != (b is not None):
            raise UsageError(f"bad graph shorthand {text!r}")
        if kind == "K":
            return clique(a)
        if kind == "C":
            return cycle(a)
        if kind == "P":
            return path(a)
        if kind == "E":
            return edgeless(a)
        if kind == "B":
            return book(BookSpec(a, int(b)))
        return layered(LayeredTreeSpec(a, int(b)))
    try:
        with open(text) as f:
            return parse_graph(f.read())
    except FileNotFoundError:
        raise UsageError(f"{text!r} is neither a graph shorthand nor a file") from None


def _emit(key, value) -> None:
    if isinstance(value, (list, tuple)):
        value = " ".join(map(str, value))
    print(f"{key}\t{value}")


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _read(path: str) -> str:
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise UsageError(str(e)) from None


def _parse_ordering(text: str, n: int) -> Ordering:
    perm = tuple(int(x) for x in text.split())
    if len(perm) != n:
        raise UsageError(f"ordering lists {len(perm)} vertices, graph has {n}")
    return Ordering(perm)


# -- subcommands ------------------------------------------------------------------

def cmd_bounds(a) -> int:
    g = parse_graph_arg(a.graph)
    order = _parse_ordering(_read(a.ordering), g.n) if a.ordering else None
    _emit("n", g.n)
    _emit("m", len(g.edges()))
    for k, v in adversary.bound_report(g, order).items():
        _emit(k, v)
    return 0


def cmd_fool(a) -> int:
    g = parse_graph_arg(a.graph)
    s = engine.load_strategy(a.strategy)
    s.check(g)
    if a.q != s.q:
        raise UsageError(f"strategy file plays with {s.q} colors, not {a.q}")
    order = _parse_ordering(_read(a.ordering), g.n) if a.ordering else adversary.natural_ordering(g)
    _emit("budget", a.budget)
    chi = adversary.fool(g, order, a.q, s, budget=a.budget)
    _emit("coloring", chi)
    _emit("correct", len(engine.evaluate(g, a.q, s, chi)))
    return 0


def cmd_verify(a) -> int:
    g = parse_graph_arg(a.graph)
    s = engine.load_strategy(a.strategy)
    _emit("budget", a.budget)
    out = engine.verify_winning(g, s.q, s, budget=a.budget, jobs=1 if a.deterministic else a.jobs)
    _emit("winning", "yes" if out.winning else "no")
    if not out.winning:
        _emit("counterexample", out.counterexample)
    return 0


def _solve_report(res: synthesis.SynthesisResult) -> None:
    _emit("status", res.status)
    _emit("nodes", res.stats.nodes)
    _emit("forced", res.stats.forced)
    _emit("seconds", f"{res.stats.seconds:.3f}")


def cmd_solve(a) -> int:
    g = parse_graph_arg(a.graph)
    _emit("node_budget", a.node_budget)
    res = synthesis.exists_winning_strategy(g, a.q, a.node_budget, a.size_budget)
    _solve_report(res)
    if res.winning and a.out:
        engine.store_strategy(a.out, g, res.strategy)
        _emit("strategy", a.out)
    return 2 if res.status == synthesis.OVER_BUDGET else 0


def cmd_hg(a) -> int:
    g = parse_graph_arg(a.graph)
    _emit("node_budget", a.node_budget)
    results = synthesis.scan_q(g, a.max_q, a.node_budget, a.size_budget, monotone=a.monotone)
    for q, res in results.items():
        _emit(f"q{q}", f"{res.status} nodes={res.stats.nodes}")
    _emit("hg", max(q for q, r in results.items() if r.winning))
    return 0


def cmd_strategy(a) -> int:
    if a.family == "clique":
        if a.n is None:
            raise UsageError("strategy clique needs --n")
        g, s = clique(a.n), constructive.clique_strategy(a.n, a.q)
    else:
        if a.d is None or a.N is None:
            raise UsageError("strategy gdn needs --d and --N")
        s = constructive.gdn_strategy(a.d, a.N, a.q)
        g = s.graph
    if not a.rule:
        size = sum(s.q ** g.degree(v) for v in range(g.n))
        if size > a.size_budget:
            raise BudgetExceeded(f"tabulating needs {size} entries, size budget is {a.size_budget}")
        s = engine.TableStrategy(s.q, s.tables(g))
    _write(a.out, engine.format_strategy(g, s))
    return 0


def cmd_random_strategy(a) -> int:
    g = parse_graph_arg(a.graph)
    s = engine.random_strategy(g, a.q, np.random.default_rng(a.seed))
    _write(a.out, engine.format_strategy(g, s))
    return 0


def _load_points(path: str) -> covering.PointSet:
    try:
        return covering.parse_pointset(_read(path))
    except ValueError as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_cover(a) -> int:
    S = _load_points(a.pointset)
    _emit("points", len(S))
    _emit("d", S.d)
    if a.recursive:
        cover = covering.cover_recursive(S, check=True)
        _emit("method", "recursive")
    else:
        cover = covering.is_coverable(S, budget=a.budget)
        _emit("method", "matching")
    _emit("coverable", "yes" if cover is not None else "no")
    if cover is not None:
        _emit("valid", "yes" if covering.is_valid_cover(S, cover) else "no")
        if a.out:
            _write(a.out, covering.format_cover(cover))
            _emit("cover", a.out)
    return 0


def cmd_witness(a) -> int:
    S = covering.noncoverable_witness(a.d)
    hb = covering.h_bounds(a.d)
    _emit("d", a.d)
    _emit("lower", hb.lower)
    _emit("upper", hb.upper)
    _emit("points", len(S))
    _emit("coverable", "yes" if covering.is_coverable(S, budget=a.budget) is not None else "no")
    if a.out:
        _write(a.out, covering.format_pointset(S))
        _emit("pointset", a.out)
    return 0


def cmd_hsearch(a) -> int:
    try:
        box = tuple(int(x) for x in a.box.split(","))
    except ValueError:
        raise UsageError(f"bad box {a.box!r}") from None
    mode = "random" if a.random is not None else "exhaustive"
    _emit("budget", a.budget)
    rep = covering.search_h(a.d, box, a.size, mode=mode, trials=a.random or 0, seed=a.seed,
                            budget=a.budget, jobs=1 if a.deterministic else a.jobs)
    _emit("mode", rep.mode)
    if rep.seed is not None:
        _emit("seed", rep.seed)
    _emit("checked", rep.checked)
    _emit("coverable", rep.coverable)
    _emit("noncoverable", rep.noncoverable)
    if rep.mode == "exhaustive":
        _emit("all_coverable", "yes" if rep.witness is None else "no")
    if rep.witness is not None:
        _emit("witness", ";".join(",".join(map(str, p)) for p in rep.witness.points))
    return 0


def cmd_book_fool(a) -> int:
    S = _load_points(a.points) if a.points else covering.noncoverable_witness(a.d)
    s = engine.load_strategy(a.strategy)
    chi = covering.book_adversary(a.d, a.n, S, s)
    g = book(BookSpec(a.d, a.n))
    _emit("points", len(S))
    _emit("coloring", chi)
    _emit("correct", len(engine.evaluate(g, s.q, s, chi)))
    return 0


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hatguess", description="Hat guessing game on graphs.", epilog=FORMATS,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    def common(parser, default):
        # accepted before or after the subcommand; the subcommand's value wins
        parser.add_argument("--seed", type=int, default=default(0),
                            help="seed for every random choice (default 0)")
        parser.add_argument("--jobs", type=int, default=default(1), help="worker processes where supported")
        parser.add_argument("--deterministic", action="store_true", default=default(False),
                            help="force sequential runs")
        parser.add_argument("-v", "--verbose", action="store_true", default=default(False))

    common(p, lambda x: x)
    shared = argparse.ArgumentParser(add_help=False)
    common(shared, lambda x: argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_, epilog=FORMATS, parents=[shared],
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("bounds", cmd_bounds, "degeneracy, depth and the upper bounds on HG")
    sp.add_argument("graph")
    sp.add_argument("--ordering", help="ordering file (default: degeneracy ordering)")

    sp = add("fool", cmd_fool, "all-wrong coloring against a strategy, within the color budgets")
    sp.add_argument("graph")
    sp.add_argument("strategy")
    sp.add_argument("q", type=int)
    sp.add_argument("--ordering")
    sp.add_argument("--budget", type=int, default=10 ** 7, help="max contexts enumerated per vertex")

    sp = add("verify", cmd_verify, "exhaustively check a strategy file")
    sp.add_argument("graph")
    sp.add_argument("strategy")
    sp.add_argument("--budget", type=int, default=engine.DEFAULT_VERIFY_BUDGET)

    for name, fn, help_ in (("solve", cmd_solve, "decide whether q colors admit a winning strategy"),
                            ("hg", cmd_hg, "hat guessing number by deciding q = 1..max-q")):
        sp = add(name, fn, help_)
        sp.add_argument("graph")
        if name == "solve":
            sp.add_argument("--q", type=int, required=True)
            sp.add_argument("--out", help="write the winning strategy here")
        else:
            sp.add_argument("--max-q", type=int, required=True)
            sp.add_argument("--monotone", action="store_true", help="stop at the first losing q")
        sp.add_argument("--node-budget", type=int, default=synthesis.DEFAULT_NODE_BUDGET)
        sp.add_argument("--size-budget", type=int, default=synthesis.DEFAULT_SIZE_BUDGET)

    sp = add("strategy", cmd_strategy, "emit a constructed strategy file")
    sp.add_argument("family", choices=["gdn", "clique"])
    sp.add_argument("--d", type=int)
    sp.add_argument("--N", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--rule", action="store_true", help="emit the rule line instead of tables")
    sp.add_argument("--size-budget", type=int, default=10 ** 7)
    sp.add_argument("--out")

    sp = add("random-strategy", cmd_random_strategy, "uniformly random tabulated strategy")
    sp.add_argument("graph")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--out")

    sp = add("cover", cmd_cover, "decide coverability of a point set")
    sp.add_argument("pointset")
    sp.add_argument("--recursive", action="store_true", help="use the constructive recursion")
    sp.add_argument("--budget", type=int, default=10 ** 4)
    sp.add_argument("--out", help="write the cover here")

    sp = add("witness", cmd_witness, "the counting non-coverable set in dimension d")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--budget", type=int, default=10 ** 4)
    sp.add_argument("--out")

    sp = add("hsearch", cmd_hsearch, "search subsets of a box for non-coverable ones")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--box", required=True, help="side lengths, e.g. 5,5")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--random", type=int, metavar="TRIALS")
    sp.add_argument("--budget", type=int, default=10 ** 7)

    sp = add("book-fool", cmd_book_fool, "all-wrong coloring on B(d,n) from a non-coverable set")
    sp.add_argument("strategy")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--points", help="non-coverable point set (default: the counting witness)")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if a.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return a.fn(a)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 2
    except (UsageError, StrategyFormatError, ValueError, OverflowError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
