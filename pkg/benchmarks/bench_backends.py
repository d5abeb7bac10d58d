#!/usr/bin/env python3
"""Benchmark: compiled bitmask kernels vs the pure-Python fallback.

Times the hot enumeration loops (Shapley marginal sums over 2^n * n,
superadditivity 3^n and supermodularity 4^n pair scans) on identical
random games and prints the speedup.  Run after
``pip install -e . --no-build-isolation`` so the extension is built:

    python benchmarks/bench_backends.py [--agents 12] [--seed 0]
"""

import argparse
import os
import random
import time

from symbiont import backend
from symbiont.games import Game
from symbiont.generators import random_basic_mcnet, random_superadditive_game


def timed(fn, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def run(label, fn, repeat):
    os.environ["SYMBIONT_PURE"] = "1"
    pure_time, pure_result = timed(fn, repeat)
    os.environ.pop("SYMBIONT_PURE")
    compiled_time, compiled_result = timed(fn, repeat)
    assert pure_result == compiled_result, f"{label}: backends disagree"
    ratio = pure_time / compiled_time if compiled_time else float("inf")
    print(
        f"{label:<28} pure {pure_time * 1e3:9.1f} ms   "
        f"compiled {compiled_time * 1e3:9.1f} ms   x{ratio:6.1f}"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--agents", type=int, default=12, help="universe size (2^n table)")
    parser.add_argument("--scan-agents", type=int, default=10, help="size for the 4^n pair scan")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not backend.compiled_available():
        raise SystemExit("compiled kernels are not built; install with setup.py first")

    rng = random.Random(args.seed)
    game = Game.from_mcnet(random_basic_mcnet(rng, args.agents, max_rules=24))

    # supermodular games make the pair scans run to completion (no early
    # witness), which is the load the kernels exist for
    scan_game = random_superadditive_game(rng, args.scan_agents, style="synergy")
    scan_values = scan_game.dense_values()

    print(f"n = {args.agents} (tables, Shapley), n = {args.scan_agents} (pair scans); seed {args.seed}")
    values = game.dense_values()
    run(
        f"shapley sums (2^{args.agents} x {args.agents})",
        lambda: backend.shapley_from_values(args.agents, values),
        args.repeat,
    )
    run(
        f"supermodularity (4^{args.scan_agents})",
        lambda: backend.supermodularity_witness(args.scan_agents, scan_values),
        args.repeat,
    )
    run(
        f"superadditivity (3^{args.scan_agents})",
        lambda: backend.superadditivity_witness(args.scan_agents, scan_values),
        args.repeat,
    )


if __name__ == "__main__":
    main()
