import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmseg import (
    DegenerateSeriesError,
    Direction,
    QueryDescriptor,
    TimeSeries,
    build_spectrum_index,
    dedup_consecutive,
    find_extrema,
    label_extrema,
    materialize,
    optimal_segmentation,
    optimal_spectrum,
    query_spectrum,
    segment_optimal,
    segmentation_omafe,
    spectrum_curve,
)


def prepared(values):
    pre = dedup_consecutive(TimeSeries.from_values(values))
    return label_extrema(pre), pre


def index_of(values):
    return build_spectrum_index(*prepared(values))


@pytest.mark.parametrize(
    "values, k, breakpoints, total",
    [
        ([0, 10, 9, 10, 0], 2, (0, 3, 4), 0.5),
        ([0, 10, 9, 10, 0], 1, (0, 4), 5),
        ([1, 3, 2, 4], 3, (0, 1, 2, 3), 0),
        ([1, 3, 2, 4], 2, (0, 3), 0.5),
    ],
)
def test_segment_optimal_examples(values, k, breakpoints, total):
    seg = segment_optimal(*prepared(values)[:1], k, prepared(values)[1])
    assert seg.breakpoints == breakpoints
    assert seg.total_error == total


def test_single_segment_is_flat():
    seg = optimal_segmentation(TimeSeries.from_values([0, 10, 9, 10, 0]), 1)
    assert seg.directions == (Direction.FLAT,)


def test_invalid_budget():
    with pytest.raises(ValueError):
        segment_optimal(*prepared([1, 2])[:1], 0, prepared([1, 2])[1])
    with pytest.raises(ValueError):
        query_spectrum(index_of([1, 2]), 0)
    with pytest.raises(ValueError):
        optimal_segmentation(TimeSeries.from_values([1, 2]), 0)


def test_constant_and_single_sample_series():
    seg = optimal_segmentation(TimeSeries.from_values([7, 7, 7]), 3)
    assert seg.breakpoints == (0, 2) and seg.total_error == 0
    assert optimal_segmentation(TimeSeries.from_values([7]), 1).breakpoints == (0, 0)
    assert optimal_spectrum(TimeSeries.from_values([7, 7]), 2) == [(1, 0.0), (2, 0.0)]
    with pytest.raises(DegenerateSeriesError):
        build_spectrum_index(*prepared([1, 2])[:1], dedup_consecutive(TimeSeries.from_values([3])))


def test_breakpoints_map_to_source_indices():
    seg = optimal_segmentation(TimeSeries.from_values([0, 0, 10, 10, 9, 10, 10, 0, 0]), 2)
    assert seg.breakpoints == (0, 5, 8)
    assert seg.total_error == 0.5


@pytest.mark.parametrize(
    "values, positions, earliest",
    [([0, 10, 9, 10, 0], [0, 3, 4, 1, 2], [0, 0, 0, 3, 3]), ([1, 3, 2, 4], [0, 3, 1, 2], [0, 0, 2, 2]), ([0, 5], [0, 1], [0, 0])],
)
def test_index_examples(values, positions, earliest):
    index = index_of(values)
    assert index.by_scale_positions.tolist() == positions
    assert index.earliest_of_scale.tolist() == earliest


@pytest.mark.parametrize(
    "k, cut, omafe, breakpoints",
    [(2, 3, 0.5, (0, 3, 4)), (1, 0, 5, (0, 4)), (3, 3, 0.5, (0, 3, 4)), (4, 5, 0, (0, 1, 2, 3, 4))],
)
def test_query_and_materialize(k, cut, omafe, breakpoints):
    index = index_of([0, 10, 9, 10, 0])
    desc, value = query_spectrum(index, k)
    assert desc == QueryDescriptor(k, cut, 5)
    assert value == omafe
    assert materialize(index, desc).breakpoints == breakpoints


def test_foreign_descriptor_rejected():
    with pytest.raises(ValueError):
        materialize(index_of([1, 3, 2, 4]), QueryDescriptor(1, 0, 5))


@pytest.mark.parametrize(
    "values, max_k, curve",
    [
        ([0, 10, 9, 10, 0], 4, [(1, 5), (2, 0.5), (3, 0.5), (4, 0)]),
        ([1, 3, 2, 4], 3, [(1, 0.5), (2, 0.5), (3, 0)]),
        ([1, 2, 5, 9], 3, [(1, 0), (2, 0), (3, 0)]),
    ],
)
def test_spectrum_curve_examples(values, max_k, curve):
    assert spectrum_curve(index_of(values), max_k) == curve


def test_query_exceeds_half_excluded_label_when_ends_are_stretched():
    # Half of the largest label left out only bounds the error from below:
    # stretching the first kept extremum to position 0 worsens the first piece.
    values = [4, 1, 4, 4, 0, 4, 0, 1, 2, 0, 5, 4, 2, 3, 3, 4, 1, 3, 3, 4, 3, 1]
    index = index_of(values)
    desc, value = query_spectrum(index, 1)
    assert index.sorted_scale[desc.cut] / 2 == 2.0
    assert value == 2.5
    assert segmentation_omafe(values, materialize(index, desc).breakpoints)[0] == 2.5


series_st = st.lists(st.integers(0, 5), min_size=2, max_size=50)


@given(series_st, st.integers(1, 12))
def test_budget_alternation_and_breakpoints(ys, k):
    series = TimeSeries.from_values(ys)
    seg = optimal_segmentation(series, k)
    assert 1 <= seg.n_segments <= k
    assert seg.breakpoints[0] == 0 and seg.breakpoints[-1] == len(ys) - 1
    assert seg.total_error == max(seg.per_segment_error)
    assert (seg.total_error, [tuple(p) for p in zip(seg.directions, seg.per_segment_error)]) == (
        segmentation_omafe(ys, seg.breakpoints)[0],
        [tuple(p) for p in segmentation_omafe(ys, seg.breakpoints)[1]],
    )
    moving = [d for d in seg.directions if d is not Direction.FLAT]
    assert all(a is not b for a, b in zip(moving, moving[1:]))
    pre = dedup_consecutive(series)
    if len(pre) >= 2:
        extrema_src = set(pre.origin_index[find_extrema(pre).pos].tolist())
        assert set(seg.breakpoints[1:-1]) <= extrema_src


@given(series_st)
def test_index_and_direct_agree(ys):
    if len(dedup_consecutive(TimeSeries.from_values(ys))) < 2:
        return
    labeled, pre = prepared(ys)
    index = build_spectrum_index(labeled, pre)
    order_scale = index.sorted_scale
    assert sorted(index.order.tolist()) == list(range(len(labeled)))
    for r, e in enumerate(index.earliest_of_scale.tolist()):
        assert e <= r and order_scale[e] == order_scale[r]
        assert e == 0 or order_scale[e - 1] > order_scale[e]
    previous = np.inf
    for k in range(1, len(labeled) + 2):
        desc, value = query_spectrum(index, k)
        seg = segment_optimal(labeled, k, pre)
        assert materialize(index, desc).breakpoints == seg.breakpoints
        assert value == seg.total_error
        assert value >= index.sorted_scale[desc.cut] / 2 if desc.cut < len(index) else value == 0
        assert value <= previous
        previous = value


def test_index_is_read_only():
    index = index_of([1, 3, 2, 4])
    for arr in (index.order, index.earliest_of_scale, index.sorted_scale, index.cut_error):
        with pytest.raises(ValueError):
            arr[0] = 0
