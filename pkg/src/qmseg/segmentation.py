"""Optimal budgeted segmentation from scale labels, and the per-budget spectrum.

Given labels, the segmentation for a budget of ``k`` keeps every extremum
whose label is strictly larger than the ``(k+2)``-th largest label, then
stretches the first and last kept extrema out to the series end points.

Half the largest label left out is only a lower bound on the resulting
error: stretching the outer extrema to the end points can make the first or
last segment worse.  :class:`SpectrumIndex` therefore sorts the labels once
and also precomputes the exact error of every distinct cut, so any budget is
answered in constant time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from .labeling import LabeledExtrema, label_extrema
from .monotone import Direction, segmentation_omafe
from .series import DegenerateSeriesError, PreprocessedSeries, TimeSeries, dedup_consecutive


@dataclass(frozen=True)
class Segmentation:
    """Breakpoints in source-index space with per-segment direction and error."""

    breakpoints: tuple[int, ...]
    directions: tuple[Direction, ...]
    per_segment_error: tuple[float, ...]
    total_error: float

    @property
    def n_segments(self) -> int:
        return len(self.breakpoints) - 1

    def segments(self) -> Iterator[tuple[int, int, Direction, float]]:
        for a, b, d, e in zip(
            self.breakpoints, self.breakpoints[1:], self.directions, self.per_segment_error
        ):
            yield a, b, d, e


def trivial_segmentation(length: int) -> Segmentation:
    """One flat, error-free segment over a series with no usable variation."""
    if length < 1:
        raise ValueError("empty series")
    return Segmentation((0, length - 1), (Direction.FLAT,), (0.0,), 0.0)


def segmentation_from_positions(series: PreprocessedSeries, positions) -> Segmentation:
    """Segment ``series`` at sorted deduplicated ``positions``.

    The first and last positions are replaced by the series end points and
    the result is expressed in source indices.
    """
    m = len(series)
    pts = [int(p) for p in positions]
    if len(pts) < 2:
        pts = [0, m - 1]
    else:
        pts[0], pts[-1] = 0, m - 1
    total, per_segment = segmentation_omafe(series.values, pts)
    source = series.origin_index[pts].tolist()
    source[0], source[-1] = 0, series.source_length - 1
    return Segmentation(
        tuple(source),
        tuple(d for d, _ in per_segment),
        tuple(e for _, e in per_segment),
        total,
    )


def segment_optimal(labeled: LabeledExtrema, k: int, series: PreprocessedSeries) -> Segmentation:
    """Best segmentation with at most ``k`` segments, in O(n k).

    When there are at most ``k + 1`` extrema, all of them are kept.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if len(series) < 2:
        raise DegenerateSeriesError("degenerate series")
    if len(labeled) <= k + 1:
        return segmentation_from_positions(series, labeled.pos)
    kept = _kernels.select_budget(labeled.scale, k)
    return segmentation_from_positions(series, labeled.pos[kept])


@dataclass(frozen=True)
class QueryDescriptor:
    """Selects ranks ``[0, cut)`` of a spectrum index holding ``size`` extrema."""

    k: int
    cut: int
    size: int


@dataclass(frozen=True, eq=False)
class SpectrumIndex:
    """Labels sorted by decreasing scale with tie-class starts, for O(1) queries.

    ``order[r]`` is the index (into ``by_position``) of the extremum of rank
    ``r``; ``earliest_of_scale[r]`` is the first rank sharing that scale.
    ``cut_error[c]`` is the error of the segmentation keeping ranks
    ``[0, c)``, filled for every tie-class start and for ``c == len(self)``.
    """

    by_position: LabeledExtrema
    order: np.ndarray
    earliest_of_scale: np.ndarray
    sorted_scale: np.ndarray
    cut_error: np.ndarray
    series: PreprocessedSeries

    def __len__(self) -> int:
        return int(self.order.size)

    @property
    def by_scale_positions(self) -> np.ndarray:
        return self.by_position.pos[self.order]


def build_spectrum_index(labeled: LabeledExtrema, series: PreprocessedSeries) -> SpectrumIndex:
    """Sort labels, link ranks to tie-class starts and tabulate cut errors.

    O(n log n) overall; the cut errors come from merging segment summaries
    while the cut sweeps from all extrema down to none.
    """
    if len(series) < 2 or len(labeled) < 2:
        raise DegenerateSeriesError("degenerate series")
    # descending scale, ascending position inside a tie class
    order = np.lexsort((labeled.pos, -labeled.scale))
    sorted_scale = labeled.scale[order]
    ranks = np.arange(order.size)
    starts = np.ones(order.size, dtype=bool)
    starts[1:] = sorted_scale[1:] != sorted_scale[:-1]
    earliest = np.maximum.accumulate(np.where(starts, ranks, 0))
    cut_error = _kernels.cut_errors(series.values, labeled.pos, order, np.flatnonzero(starts))
    for arr in (order, sorted_scale, earliest, cut_error):
        arr.setflags(write=False)
    return SpectrumIndex(labeled, order, earliest, sorted_scale, cut_error, series)


def query_spectrum(index: SpectrumIndex, k: int) -> tuple[QueryDescriptor, float]:
    """Optimal error for budget ``k`` and a descriptor of its extrema, in O(1)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    size = len(index)
    cut = size if size <= k + 1 else int(index.earliest_of_scale[k + 1])
    return QueryDescriptor(k, cut, size), float(index.cut_error[cut])


def materialize(index: SpectrumIndex, cut: QueryDescriptor) -> Segmentation:
    """Concrete segmentation for a descriptor, in O(k log k) plus error evaluation."""
    if cut.size != len(index) or not 0 <= cut.cut <= cut.size:
        raise ValueError("descriptor does not belong to this index")
    chosen = np.sort(index.by_position.pos[index.order[:cut.cut]])
    return segmentation_from_positions(index.series, chosen)


def spectrum_curve(index: SpectrumIndex, max_k: int) -> list[tuple[int, float]]:
    """``(k, optimal error)`` for ``k = 1..max_k``."""
    if max_k < 1:
        raise ValueError(f"max_k must be >= 1, got {max_k}")
    return [(k, query_spectrum(index, k)[1]) for k in range(1, max_k + 1)]


def optimal_segmentation(series: TimeSeries, k: int) -> Segmentation:
    """Deduplicate, label and segment a raw series, handling constant input."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    pre = dedup_consecutive(series)
    if len(pre) < 2:
        return trivial_segmentation(len(series))
    return segment_optimal(label_extrema(pre), k, pre)


def optimal_spectrum(series: TimeSeries, max_k: int) -> list[tuple[int, float]]:
    """Optimal error curve of a raw series; all zeros for constant input."""
    pre = dedup_consecutive(series)
    if len(pre) < 2:
        if len(series) < 1:
            raise ValueError("empty series")
        if max_k < 1:
            raise ValueError(f"max_k must be >= 1, got {max_k}")
        return [(k, 0.0) for k in range(1, max_k + 1)]
    return spectrum_curve(build_spectrum_index(label_extrema(pre), pre), max_k)
