"""Piecewise-linear top-down and bottom-up segmentation baselines.

Both work on the raw (non-deduplicated) samples and score a range by the
sum of squared residuals of its least-squares line, which prefix sums of
``x, y, x^2, xy, y^2`` give in constant time.  Ties always resolve to the
leftmost range or smallest split index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .monotone import segmentation_omafe
from .segmentation import Segmentation, trivial_segmentation
from .series import TimeSeries


@dataclass(frozen=True, eq=False)
class RangeMoments:
    """Prefix sums with a leading zero: ``sum_x[i]`` covers samples ``0..i-1``."""

    count: np.ndarray
    sum_x: np.ndarray
    sum_y: np.ndarray
    sum_xx: np.ndarray
    sum_xy: np.ndarray
    sum_yy: np.ndarray

    def __len__(self) -> int:
        return int(self.count.size) - 1

    def range_sums(self, p: int, q: int) -> dict[str, float]:
        """Sums over samples ``p..q`` inclusive (empty when ``q < p``)."""
        a, b = p, max(q + 1, p)
        return {
            name: float(arr[b] - arr[a])
            for name, arr in (
                ("count", self.count),
                ("x", self.sum_x),
                ("y", self.sum_y),
                ("xx", self.sum_xx),
                ("xy", self.sum_xy),
                ("yy", self.sum_yy),
            )
        }

    @property
    def kernel_args(self):
        return self.sum_x, self.sum_y, self.sum_xx, self.sum_xy, self.sum_yy


@dataclass(frozen=True)
class LinearSegmentation:
    """Abutting inclusive index ranges covering the series, with their SSE."""

    ranges: tuple[tuple[int, int], ...]
    sse: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.ranges)


def build_moments(series: TimeSeries) -> RangeMoments:
    if len(series) < 1:
        raise ValueError("empty series")
    x, y = series.xs, series.ys

    def prefix(term):
        out = np.zeros(term.size + 1)
        np.cumsum(term, out=out[1:])
        out.setflags(write=False)
        return out

    return RangeMoments(
        prefix(np.ones_like(x)), prefix(x), prefix(y), prefix(x * x), prefix(x * y), prefix(y * y)
    )


def regression_error(m: RangeMoments, p: int, q: int) -> float:
    """Sum of squared residuals of the least-squares line over samples ``p..q``."""
    if not 0 <= p <= q < len(m):
        raise IndexError(f"range [{p}, {q}] out of bounds for length {len(m)}")
    return float(_kernels.range_sse(*m.kernel_args, p, q))


def _linear(m: RangeMoments, starts) -> LinearSegmentation:
    n = len(m)
    starts = [int(s) for s in starts]
    ends = [s - 1 for s in starts[1:]] + [n - 1]
    ranges = tuple(zip(starts, ends))
    return LinearSegmentation(ranges, tuple(regression_error(m, a, b) for a, b in ranges))


def top_down(series: TimeSeries, k: int) -> LinearSegmentation:
    """Repeatedly split the worst-fitting range at its best split point.

    Only ranges of three or more samples are split; the loop stops early
    once none is left.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = len(series)
    if n < 2:
        raise ValueError("top_down needs at least two samples")
    m = build_moments(series)
    args = m.kernel_args
    ranges = [(0, n - 1, regression_error(m, 0, n - 1))]
    while len(ranges) < k:
        worst = None
        for idx, (i, j, err) in enumerate(ranges):
            if j - i >= 2 and (worst is None or err > ranges[worst][2]):
                worst = idx
        if worst is None:
            break
        i, j, _ = ranges[worst]
        split, _ = _kernels.best_split(*args, i, j)
        ranges[worst:worst + 1] = [
            (i, split, regression_error(m, i, split)),
            (split + 1, j, regression_error(m, split + 1, j)),
        ]
    return LinearSegmentation(tuple((i, j) for i, j, _ in ranges), tuple(e for _, _, e in ranges))


def bottom_up(series: TimeSeries, k: int) -> LinearSegmentation:
    """Merge the cheapest adjacent pair of ranges, starting from singletons, until ``k`` remain."""
    n = len(series)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    m = build_moments(series)
    return _linear(m, _kernels.bottom_up_merge(*m.kernel_args, k))


def aggregate_signs(series: TimeSeries, lin: LinearSegmentation) -> Segmentation:
    """Merge consecutive ranges whose end-to-end change has the same sign.

    Range boundaries become shared breakpoints at the start of the following
    range; a zero change counts as positive.
    """
    n = len(series)
    if n < 1:
        raise ValueError("empty series")
    if not lin.ranges or lin.ranges[0][0] != 0 or lin.ranges[-1][1] != n - 1:
        raise ValueError("ranges do not cover the series")
    if n == 1:
        return trivial_segmentation(1)
    bps = [0] + [a for a, _ in lin.ranges[1:]] + [n - 1]
    if bps[-2] == bps[-1]:
        bps.pop()  # trailing singleton range leaves a zero-length segment
    y = series.ys
    merged = [bps[0]]
    last_sign = None
    for a, b in zip(bps, bps[1:]):
        sign = y[b] >= y[a]
        if sign == last_sign:
            merged[-1] = b
        else:
            merged.append(b)
        last_sign = sign
    total, per_segment = segmentation_omafe(y, merged)
    return Segmentation(
        tuple(merged),
        tuple(d for d, _ in per_segment),
        tuple(e for _, e in per_segment),
        total,
    )
