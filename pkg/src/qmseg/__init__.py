"""Optimal quasi-monotonic segmentation of numeric sequences.

The error of a segment is the l-infinity distance to its best monotone
approximation (OMAFE).  Extrema are labeled with a scale in linear time and
any segment budget can then be answered from a sorted index.

>>> from qmseg import TimeSeries, optimal_segmentation
>>> seg = optimal_segmentation(TimeSeries.from_values([0, 10, 9, 10, 0]), 2)
>>> seg.breakpoints, seg.total_error
((0, 3, 4), 0.5)
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .heuristics import (
    LinearSegmentation,
    RangeMoments,
    aggregate_signs,
    bottom_up,
    build_moments,
    regression_error,
    top_down,
)
from .labeling import LabeledExtrema, LabeledExtremum, label_extrema
from .monotone import (
    Direction,
    MonotoneFit,
    best_monotone_fit,
    monotone_envelopes,
    segment_omafe,
    segmentation_omafe,
)
from .rng import random_walk
from .segmentation import (
    QueryDescriptor,
    Segmentation,
    SpectrumIndex,
    build_spectrum_index,
    materialize,
    optimal_segmentation,
    optimal_spectrum,
    query_spectrum,
    segment_optimal,
    spectrum_curve,
)
from .series import (
    CSVFormatError,
    DegenerateSeriesError,
    Extrema,
    Extremum,
    Kind,
    PreprocessedSeries,
    TimeSeries,
    dedup_consecutive,
    find_extrema,
    parse_csv,
)

__all__ = [
    "BACKEND",
    "CSVFormatError",
    "DegenerateSeriesError",
    "Direction",
    "Extrema",
    "Extremum",
    "Kind",
    "LabeledExtrema",
    "LabeledExtremum",
    "LinearSegmentation",
    "MonotoneFit",
    "PreprocessedSeries",
    "QueryDescriptor",
    "RangeMoments",
    "Segmentation",
    "SpectrumIndex",
    "TimeSeries",
    "aggregate_signs",
    "best_monotone_fit",
    "bottom_up",
    "build_moments",
    "build_spectrum_index",
    "dedup_consecutive",
    "find_extrema",
    "label_extrema",
    "materialize",
    "monotone_envelopes",
    "optimal_segmentation",
    "optimal_spectrum",
    "parse_csv",
    "query_spectrum",
    "random_walk",
    "regression_error",
    "segment_omafe",
    "segment_optimal",
    "segmentation_omafe",
    "spectrum_curve",
    "top_down",
]
