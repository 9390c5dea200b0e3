"""Time the exact path enumeration with the compiled kernel and the numpy fallback.

Run from the repository root: ``python benchmarks/bench_interp.py [--max-vars N]``.
"""

import argparse
import random
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from generators import random_term  # noqa: E402
from pathsum import _kernels_py, kernels  # noqa: E402
from pathsum.semantics import _flatten  # noqa: E402


def kernel_args(t):
    t = t.renumbered(0)
    level = max(3, t.phase.max_log_den())
    mons = np.asarray(list(t.phase.terms), dtype=np.int64)
    weights = np.asarray([int(c * (1 << level)) for c in t.phase.terms.values()], dtype=np.int64)
    return (len(t.vars), mons, weights, *_flatten(t.out), *_flatten(t.inp), level)


def best_of(fn, args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vars", type=int, default=18)
    ap.add_argument("--seed", type=int, default=0)
    opts = ap.parse_args()
    rng = random.Random(opts.seed)
    print(f"compiled kernel available: {kernels.BACKEND == 'compiled'}")
    print(f"{'vars':>4}  {'compiled s':>11}  {'numpy s':>9}  {'ratio':>6}")
    for k in range(8, opts.max_vars + 1, 2):
        args = kernel_args(random_term(rng, k, 2, 2, max_log_den=3))
        fast = best_of(kernels.accumulate, args)
        slow = best_of(_kernels_py.accumulate, args)
        assert np.array_equal(kernels.accumulate(*args), _kernels_py.accumulate(*args))
        print(f"{k:>4}  {fast:>11.5f}  {slow:>9.5f}  {slow / fast:>6.1f}")


if __name__ == "__main__":
    main()
