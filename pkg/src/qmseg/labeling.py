"""Linear-time scale labeling of extrema.

Extrema are visited left to right on a stack whose minima strictly increase
and maxima strictly decrease from the bottom up.  A new extremum at least as
extreme as the second entry from the top closes the top two as a pair and
labels both with their gap; with exactly two entries, only the older one is
labeled and dropped.  Whatever remains on the stack is labeled while it
unwinds.  Comparisons are non-strict, so an equal-valued later extremum
supersedes the earlier one, which instead receives the largest gap found
between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from .series import DegenerateSeriesError, Extrema, Kind, PreprocessedSeries, find_extrema


@dataclass(frozen=True)
class LabeledExtremum:
    pos: int
    kind: Kind
    scale: float


@dataclass(frozen=True, eq=False)
class LabeledExtrema:
    """Position-ordered extrema with their scale labels, as parallel arrays."""

    pos: np.ndarray
    kind_code: np.ndarray
    scale: np.ndarray

    def __len__(self) -> int:
        return int(self.pos.size)

    def __iter__(self) -> Iterator[LabeledExtremum]:
        for p, k, s in zip(self.pos.tolist(), self.kind_code.tolist(), self.scale.tolist()):
            yield LabeledExtremum(p, Kind.from_code(k), s)

    def __getitem__(self, i: int) -> LabeledExtremum:
        return LabeledExtremum(
            int(self.pos[i]), Kind.from_code(int(self.kind_code[i])), float(self.scale[i])
        )


def label_extrema(series: PreprocessedSeries, extrema: Extrema | None = None) -> LabeledExtrema:
    """Scale label of every extremum of ``series``.

    ``extrema`` defaults to :func:`qmseg.series.find_extrema` of the series.
    Runs in time linear in the number of extrema.
    """
    if extrema is None:
        extrema = find_extrema(series)
    if len(extrema) < 2:
        raise DegenerateSeriesError("degenerate series")
    scale = _kernels.scale_labels(series.values, extrema.pos, extrema.kind_code)
    scale.setflags(write=False)
    return LabeledExtrema(extrema.pos, extrema.kind_code, scale)
