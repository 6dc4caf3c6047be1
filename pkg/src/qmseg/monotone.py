"""Best monotone l-infinity approximation of a value range.

For the increasing case the upper envelope is the running maximum from the
left and the lower envelope the running minimum from the right; their
midpoint is an optimal non-decreasing approximant and half their largest gap
is the error.  The decreasing case mirrors this.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class Direction(str, enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    FLAT = "flat"


@dataclass(frozen=True, eq=False)
class MonotoneFit:
    fit: np.ndarray
    error: float


def _as_values(values) -> np.ndarray:
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("values must be a non-empty 1-D sequence")
    return v


def monotone_envelopes(values, direction: Direction) -> tuple[np.ndarray, np.ndarray]:
    """Upper and lower envelopes bracketing every monotone fit of ``direction``."""
    v = _as_values(values)
    prefix_max = np.maximum.accumulate(v)
    prefix_min = np.minimum.accumulate(v)
    suffix_max = np.maximum.accumulate(v[::-1])[::-1]
    suffix_min = np.minimum.accumulate(v[::-1])[::-1]
    if direction is Direction.INCREASING:
        return prefix_max, suffix_min
    if direction is Direction.DECREASING:
        return suffix_max, prefix_min
    raise ValueError("envelopes are undefined for a flat direction")


def best_monotone_fit(values, direction: Direction) -> MonotoneFit:
    """Optimal approximant of the given direction and its l-infinity error.

    A flat direction yields the constant midrange with half the range as error.
    """
    v = _as_values(values)
    if direction is Direction.FLAT:
        hi, lo = float(v.max()), float(v.min())
        return MonotoneFit(np.full(v.size, (hi + lo) / 2), (hi - lo) / 2)
    upper, lower = monotone_envelopes(v, direction)
    return MonotoneFit((upper + lower) / 2, float((upper - lower).max()) / 2)


def endpoint_direction(first: float, last: float) -> Direction:
    if last > first:
        return Direction.INCREASING
    if last < first:
        return Direction.DECREASING
    return Direction.FLAT


def _slice_error(v: np.ndarray, direction: Direction) -> float:
    if direction is Direction.FLAT:
        return (float(v.max()) - float(v.min())) / 2
    if direction is Direction.INCREASING:
        gap = np.maximum.accumulate(v) - v
    else:
        gap = v - np.minimum.accumulate(v)
    # the largest gap to the running extreme equals the largest envelope gap
    return float(gap.max()) / 2


def segment_omafe(values, lo: int, hi: int) -> tuple[Direction, float]:
    """Direction and optimal monotone error of the inclusive slice ``[lo, hi]``."""
    v = np.asarray(values, dtype=np.float64)
    if not 0 <= lo <= hi < v.size:
        raise IndexError(f"segment [{lo}, {hi}] out of range for length {v.size}")
    direction = endpoint_direction(v[lo], v[hi])
    return direction, _slice_error(v[lo:hi + 1], direction)


def segmentation_omafe(
    values, breakpoints: Sequence[int]
) -> tuple[float, list[tuple[Direction, float]]]:
    """Worst segment error over consecutive inclusive intervals ``[b_k, b_k+1]``."""
    v = np.asarray(values, dtype=np.float64)
    bps = [int(b) for b in breakpoints]
    if v.size == 1 and bps == [0, 0]:
        return 0.0, [(Direction.FLAT, 0.0)]
    if len(bps) < 2 or bps[0] != 0 or bps[-1] != v.size - 1:
        raise ValueError("breakpoints must start at 0, end at n-1 and hold at least two entries")
    if any(b >= c for b, c in zip(bps, bps[1:])):
        raise ValueError("breakpoints must be strictly increasing")
    per_segment = [segment_omafe(v, a, b) for a, b in zip(bps, bps[1:])]
    total = max(err for _, err in per_segment)
    return total, per_segment
