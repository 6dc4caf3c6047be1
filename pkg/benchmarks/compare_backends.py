"""Time each hot kernel under the compiled and the pure-Python backend.

    python benchmarks/compare_backends.py --sizes 10000,100000 --repeat 5

Inputs are seeded Gaussian random walks.  Reported times are the best of
``--repeat`` runs, in milliseconds; bottom-up merging only runs up to
``--bottomup-ceiling`` samples because the reference version is quadratic.
"""

import argparse
import timeit

import numpy as np

from qmseg import TimeSeries, build_moments, build_spectrum_index, dedup_consecutive, label_extrema, random_walk
from qmseg import _purepy

try:
    from qmseg import _speedups
except ImportError:  # extension not built
    _speedups = None


def kernel_calls(n, seed, k, bottomup_ceiling):
    y = random_walk(n, seed)
    pre = dedup_consecutive(TimeSeries.from_values(y))
    labeled = label_extrema(pre)
    index = build_spectrum_index(labeled, pre)
    starts = np.flatnonzero(index.earliest_of_scale == np.arange(len(index)))
    pos, kind = labeled.pos, labeled.kind_code
    moments = build_moments(TimeSeries.from_values(y)).kernel_args
    calls = {
        "dedup_first": lambda m: m.dedup_first(y),
        "find_extrema": lambda m: m.find_extrema(pre.values),
        "scale_labels": lambda m: m.scale_labels(pre.values, pos, kind),
        "select_budget": lambda m: m.select_budget(labeled.scale, k),
        "cut_errors": lambda m: m.cut_errors(pre.values, pos, index.order, starts),
        "best_split": lambda m: m.best_split(*moments, 0, n - 1),
    }
    if n <= bottomup_ceiling:
        calls["bottom_up_merge"] = lambda m: m.bottom_up_merge(*moments, k)
    return calls


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="10000,100000")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--k", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--bottomup-ceiling", type=int, default=5000)
    args = parser.parse_args(argv)
    if _speedups is None:
        parser.error("the compiled extension is not available; reinstall with Cython present")

    print(f"{'n':>8} {'kernel':<16} {'cython_ms':>10} {'python_ms':>10} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        for name, call in kernel_calls(n, args.seed, args.k, args.bottomup_ceiling).items():
            fast = min(timeit.repeat(lambda: call(_speedups), number=1, repeat=args.repeat))
            slow = min(timeit.repeat(lambda: call(_purepy), number=1, repeat=args.repeat))
            print(f"{n:>8} {name:<16} {fast * 1e3:>10.3f} {slow * 1e3:>10.3f} {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
