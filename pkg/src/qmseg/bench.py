"""Wall-clock measurements behind ``qmseg bench`` and the scaling tests.

Every timing uses :func:`time.perf_counter` around a single sequential run;
nothing here runs in parallel, so numbers reflect one core of the host.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

from .heuristics import aggregate_signs, bottom_up, top_down
from .labeling import label_extrema
from .rng import random_walk
from .segmentation import SpectrumIndex, build_spectrum_index, query_spectrum, segment_optimal
from .series import TimeSeries, dedup_consecutive


@dataclass(frozen=True)
class BenchRow:
    n: int
    optimal_s: float
    topdown_s: float
    bottomup_s: float | None  # None when above the bottom-up ceiling
    index_build_s: float
    query_ns: float


def time_optimal(series: TimeSeries, k: int) -> float:
    """Seconds for dedup, labeling and one budgeted segmentation."""
    start = time.perf_counter()
    pre = dedup_consecutive(series)
    segment_optimal(label_extrema(pre), k, pre)
    return time.perf_counter() - start


def median_optimal_time(series: TimeSeries, k: int, runs: int = 5) -> float:
    return statistics.median(time_optimal(series, k) for _ in range(runs))


def query_times_ns(index: SpectrumIndex, ks) -> list[int]:
    """Nanoseconds taken by each individual query, in the order of ``ks``."""
    out = []
    clock = time.perf_counter_ns
    for k in ks:
        t0 = clock()
        query_spectrum(index, k)
        out.append(clock() - t0)
    return out


def _timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return time.perf_counter() - start, result


def bench_size(n: int, k: int, seed: int, bottomup_ceiling: int, queries: int = 1000) -> BenchRow:
    series = TimeSeries.from_values(random_walk(n, seed))
    optimal_s = time_optimal(series, k)
    topdown_s, _ = _timed(lambda: aggregate_signs(series, top_down(series, k)))
    bottomup_s = None
    if n <= bottomup_ceiling:
        bottomup_s, _ = _timed(lambda: aggregate_signs(series, bottom_up(series, min(k, n))))
    pre = dedup_consecutive(series)
    labeled = label_extrema(pre)
    build_s, index = _timed(build_spectrum_index, labeled, pre)
    ks = [1 + i % k for i in range(queries)]
    query_ns = statistics.fmean(query_times_ns(index, ks))
    return BenchRow(n, optimal_s, topdown_s, bottomup_s, build_s, query_ns)
