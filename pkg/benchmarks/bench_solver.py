"""Compare the compiled search kernel with the pure-Python fallback.

    python3 benchmarks/bench_solver.py [--repeat N] [--size N]

Each case is solved by both backends; node counts must agree, and the
table reports the best wall time of ``--repeat`` runs and the speed-up.
"""

from __future__ import annotations

import argparse
import time

from wangforge.builtins import builtin
from wangforge.compilers import compile_tree
from wangforge.solver import BACKEND, SolveRequest, solve_rect_stats
from wangforge.trees import from_predicate, normalize


def cases(size: int):
    for name in ("jeandel-rao11", "culik13", "binary16"):
        yield f"{name} {size}x{size}", SolveRequest(builtin(name), size, size)
    tree, _ = normalize(from_predicate("comb(2)", 5, 2))
    ct = compile_tree(tree, "ait")
    yield "ait comb(2) d5 11x11", ct.request()
    ct = compile_tree(tree, "spokes")
    yield "spokes comb(2) d5 11x11", ct.request()


def best_of(req, backend, repeat):
    best, nodes = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        stats = solve_rect_stats(req, backend=backend)
        best = min(best, time.perf_counter() - t0)
        nodes = stats.nodes
    return best, nodes


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=24)
    args = ap.parse_args(argv)
    if BACKEND != "compiled":
        print("compiled kernel not built; only the Python backend is available")
    print(f"{'case':<26}{'nodes':>10}{'compiled s':>13}{'python s':>11}{'speed-up':>10}")
    for label, req in cases(args.size):
        tp, np_ = best_of(req, "python", args.repeat)
        if BACKEND == "compiled":
            tc, nc = best_of(req, "compiled", args.repeat)
            if nc != np_:
                raise SystemExit(f"{label}: backends disagree on node count ({nc} vs {np_})")
            print(f"{label:<26}{nc:>10}{tc:>13.4f}{tp:>11.4f}{tp / tc:>9.1f}x")
        else:
            print(f"{label:<26}{np_:>10}{'-':>13}{tp:>11.4f}{'-':>10}")


if __name__ == "__main__":
    main()
