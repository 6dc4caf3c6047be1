import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmseg import (
    Direction,
    LinearSegmentation,
    TimeSeries,
    aggregate_signs,
    bottom_up,
    build_moments,
    regression_error,
    top_down,
)


def ts(ys):
    return TimeSeries.from_values(ys)


def test_moment_sums():
    m = build_moments(ts([0, 1, 2]))
    assert m.range_sums(0, 2) == {"count": 3, "x": 3, "y": 3, "xx": 5, "xy": 5, "yy": 5}
    assert set(m.range_sums(0, -1).values()) == {0}
    m = build_moments(ts([0, 1, 0]))
    sums = m.range_sums(0, 2)
    assert (sums["y"], sums["xy"], sums["yy"]) == (1, 1, 1)
    assert len(m.sum_x) == 4 and np.array_equal(np.diff(m.sum_xx), np.array([0.0, 1, 4]))


def test_regression_error_examples():
    assert regression_error(build_moments(ts([0, 1, 2])), 0, 2) == 0
    assert regression_error(build_moments(ts([0, 1, 0])), 0, 2) == pytest.approx(2 / 3, rel=1e-12)
    m = build_moments(ts([3, -8, 5, 1]))
    assert regression_error(m, 1, 2) == 0 and regression_error(m, 2, 2) == 0
    with pytest.raises(IndexError):
        regression_error(m, 2, 4)
    with pytest.raises(IndexError):
        regression_error(m, 2, 1)


def test_top_down_examples():
    lin = top_down(ts([0, 1, 2, 1, 0]), 2)
    assert lin.ranges == ((0, 1), (2, 4)) and lin.sse == (0, 0)
    assert top_down(ts([5, 1, 4, 2]), 1).ranges == ((0, 3),)
    assert top_down(ts([0, 1, 2, 3]), 2).ranges == ((0, 0), (1, 3))


def test_top_down_stops_when_nothing_splits():
    assert len(top_down(ts([0, 5, 1]), 10)) == 2
    with pytest.raises(ValueError):
        top_down(ts([0, 1]), 0)


def test_bottom_up_examples():
    assert bottom_up(ts([0, 1, 2, 3]), 2).ranges == ((0, 2), (3, 3))
    assert bottom_up(ts([4, 1, 3]), 3).ranges == ((0, 0), (1, 1), (2, 2))
    assert bottom_up(ts([0, 0, 10, 10]), 2).ranges == ((0, 1), (2, 3))
    for k in (0, 4):
        with pytest.raises(ValueError):
            bottom_up(ts([0, 1, 2]), k)


def test_aggregate_examples():
    seg = aggregate_signs(ts([0, 1, 2, 1, 0]), LinearSegmentation(((0, 1), (2, 4)), (0, 0)))
    assert seg.breakpoints == (0, 2, 4)
    assert seg.directions == (Direction.INCREASING, Direction.DECREASING)
    assert seg.total_error == 0
    seg = aggregate_signs(ts([0, 1, 2, 3]), LinearSegmentation(((0, 2), (3, 3)), (0, 0)))
    assert seg.breakpoints == (0, 3) and seg.directions == (Direction.INCREASING,)
    seg = aggregate_signs(ts([3, 1, 2]), LinearSegmentation(((0, 2),), (0.5,)))
    assert seg.breakpoints == (0, 2)


def test_aggregate_zero_change_counts_as_positive():
    # boundaries 0,1,3,4 give changes +3, 0, -3; the zero joins the rise
    lin = LinearSegmentation(((0, 0), (1, 2), (3, 4)), (0, 0, 0))
    seg = aggregate_signs(ts([0, 3, 1, 3, 0]), lin)
    assert seg.breakpoints == (0, 3, 4)


def test_aggregate_rejects_partial_cover():
    with pytest.raises(ValueError):
        aggregate_signs(ts([0, 1, 2]), LinearSegmentation(((0, 1),), (0,)))


walk_st = st.lists(st.floats(-100, 100, allow_nan=False, width=32), min_size=3, max_size=40)


@given(walk_st, st.integers(1, 12))
def test_heuristic_shapes(ys, k):
    series = ts(ys)
    n = len(ys)
    for lin in (top_down(series, k), bottom_up(series, min(k, n))):
        assert lin.ranges[0][0] == 0 and lin.ranges[-1][1] == n - 1
        assert all(b + 1 == c for (_, b), (c, _) in zip(lin.ranges, lin.ranges[1:]))
        assert len(lin) <= k
        assert all(e >= 0 for e in lin.sse)
        seg = aggregate_signs(series, lin)
        signs = [ys[b] >= ys[a] for a, b in zip(seg.breakpoints, seg.breakpoints[1:])]
        assert all(s != t for s, t in zip(signs, signs[1:]))
    assert top_down(series, 1).ranges == bottom_up(series, 1).ranges


@given(walk_st)
def test_merge_costs_nonnegative(ys):
    m = build_moments(ts(ys))
    n = len(ys)
    for p1 in range(n - 1):
        for p2 in range(p1, n - 1):
            p3 = min(n - 1, p2 + 1 + (p2 - p1))
            cost = regression_error(m, p1, p3) - regression_error(m, p1, p2) - regression_error(m, p2 + 1, p3)
            assert cost >= -1e-9 * max(1.0, regression_error(m, p1, p3))
