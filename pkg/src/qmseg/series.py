"""Input series, CSV ingestion, run deduplication and extremum extraction."""

from __future__ import annotations

import enum
import io
import math
import re
from dataclasses import dataclass
from typing import Iterator, TextIO

import numpy as np

from . import _kernels

_NUMBER = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")
_NON_FINITE = re.compile(r"^[+-]?(?:nan|inf|infinity)$", re.IGNORECASE)


class CSVFormatError(ValueError):
    """Raised for malformed CSV input; ``row`` is the 1-based line number."""

    def __init__(self, message: str, row: int | None = None) -> None:
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)


class DegenerateSeriesError(ValueError):
    """Fewer than two distinct consecutive values: nothing to segment."""


class Kind(str, enum.Enum):
    MINIMUM = "minimum"
    MAXIMUM = "maximum"

    @property
    def short(self) -> str:
        return "min" if self is Kind.MINIMUM else "max"

    @classmethod
    def from_code(cls, code: int) -> Kind:
        return cls.MAXIMUM if code > 0 else cls.MINIMUM


def _frozen(a, dtype) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Samples ``(xs[i], ys[i])`` with strictly increasing abscissae."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self) -> None:
        xs = _frozen(self.xs, np.float64)
        ys = _frozen(self.ys, np.float64)
        if xs.ndim != 1 or ys.ndim != 1 or xs.size != ys.size:
            raise ValueError("xs and ys must be 1-D and of equal length")
        if not (np.isfinite(xs).all() and np.isfinite(ys).all()):
            raise ValueError("series values must be finite")
        if xs.size > 1 and not (np.diff(xs) > 0).all():
            raise ValueError("xs must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @classmethod
    def from_values(cls, ys) -> TimeSeries:
        ys = np.asarray(ys, dtype=np.float64)
        return cls(np.arange(ys.size, dtype=np.float64), ys)

    def __len__(self) -> int:
        return int(self.ys.size)


@dataclass(frozen=True, eq=False)
class PreprocessedSeries:
    """Run-deduplicated values plus the source index of each kept sample."""

    values: np.ndarray
    origin_index: np.ndarray
    source_length: int

    def __len__(self) -> int:
        return int(self.values.size)

    def to_source(self, positions) -> np.ndarray:
        """Map positions in this series back to indices of the source series."""
        return self.origin_index[np.asarray(positions, dtype=np.int64)]


@dataclass(frozen=True)
class Extremum:
    pos: int
    kind: Kind


@dataclass(frozen=True, eq=False)
class Extrema:
    """Array-backed, position-ordered extrema; iterates as ``Extremum`` records."""

    pos: np.ndarray
    kind_code: np.ndarray  # +1 maximum, -1 minimum

    def __len__(self) -> int:
        return int(self.pos.size)

    def __iter__(self) -> Iterator[Extremum]:
        for p, k in zip(self.pos.tolist(), self.kind_code.tolist()):
            yield Extremum(p, Kind.from_code(k))

    def __getitem__(self, i: int) -> Extremum:
        return Extremum(int(self.pos[i]), Kind.from_code(int(self.kind_code[i])))


def _parse_number(field: str, row: int) -> float:
    text = field.strip()
    if _NUMBER.match(text):
        value = float(text)
        if math.isfinite(value):
            return value
        raise CSVFormatError(f"value {text!r} overflows a double", row)
    if _NON_FINITE.match(text):
        raise CSVFormatError(f"non-finite value {text!r}", row)
    raise CSVFormatError(f"malformed number {text!r}", row)


def parse_csv(text: str | TextIO) -> TimeSeries:
    """Parse ``y`` or ``x,y`` rows into a :class:`TimeSeries`.

    A first row whose first field is not numeric is treated as a header.
    Single-column input gets abscissae ``0, 1, 2, ...``.  Blank lines are
    ignored; LF and CRLF line endings are both accepted.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    width = None
    xs: list[float] = []
    ys: list[float] = []
    first = True
    for row, line in enumerate(stream, start=1):
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        fields = line.split(",")
        if first:
            first = False
            head = fields[0].strip()
            if not _NUMBER.match(head) and not _NON_FINITE.match(head):
                continue
        if width is None:
            if len(fields) not in (1, 2):
                raise CSVFormatError(f"expected 1 or 2 columns, got {len(fields)}", row)
            width = len(fields)
        elif len(fields) != width:
            raise CSVFormatError(f"expected {width} columns, got {len(fields)}", row)
        if width == 1:
            ys.append(_parse_number(fields[0], row))
        else:
            x = _parse_number(fields[0], row)
            if xs and x <= xs[-1]:
                raise CSVFormatError(f"non-increasing x ({x!r} after {xs[-1]!r})", row)
            xs.append(x)
            ys.append(_parse_number(fields[1], row))
    if width == 2:
        return TimeSeries(np.asarray(xs), np.asarray(ys))
    return TimeSeries.from_values(ys)


def dedup_consecutive(series: TimeSeries) -> PreprocessedSeries:
    """Keep the first sample of every run of equal consecutive values."""
    keep = _kernels.dedup_first(series.ys)
    return PreprocessedSeries(
        _frozen(series.ys[keep], np.float64), _frozen(keep, np.int64), len(series)
    )


def find_extrema(series: PreprocessedSeries) -> Extrema:
    """All strict extrema of a deduplicated series, ordered by position.

    Both end points are always included and kinds alternate.
    """
    if len(series) < 2:
        raise DegenerateSeriesError("degenerate series")
    pos, kind = _kernels.find_extrema(series.values)
    return Extrema(_frozen(pos, np.int64), _frozen(kind, np.int8))
