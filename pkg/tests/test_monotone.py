import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmseg import Direction, best_monotone_fit, monotone_envelopes, segment_omafe, segmentation_omafe

INC, DEC, FLAT = Direction.INCREASING, Direction.DECREASING, Direction.FLAT


@pytest.mark.parametrize(
    "values, direction, upper, lower",
    [
        ([0, 2, 1, 0, 2], INC, [0, 2, 2, 2, 2], [0, 0, 0, 0, 2]),
        ([1, 2, 3], INC, [1, 2, 3], [1, 2, 3]),
        ([3, 1, 2, 0], DEC, [3, 2, 2, 0], [3, 1, 1, 0]),
    ],
)
def test_envelopes(values, direction, upper, lower):
    u, lo = monotone_envelopes(values, direction)
    assert u.tolist() == upper and lo.tolist() == lower


def test_flat_envelopes_rejected():
    with pytest.raises(ValueError):
        monotone_envelopes([1, 2], FLAT)


@pytest.mark.parametrize(
    "values, direction, fit, error",
    [
        ([1, 3, 2, 4], INC, [1, 2.5, 2.5, 4], 0.5),
        ([1, 2, 3], INC, [1, 2, 3], 0),
        ([0, 10, 9, 10, 0], FLAT, [5] * 5, 5),
    ],
)
def test_best_fit(values, direction, fit, error):
    got = best_monotone_fit(values, direction)
    assert got.fit.tolist() == fit and got.error == error


@pytest.mark.parametrize(
    "lo, hi, expected",
    [(0, 3, (INC, 0.5)), (3, 4, (DEC, 0)), (0, 4, (FLAT, 5)), (2, 2, (FLAT, 0))],
)
def test_segment_omafe(lo, hi, expected):
    assert segment_omafe([0, 10, 9, 10, 0], lo, hi) == expected


def test_segment_omafe_bounds():
    with pytest.raises(IndexError):
        segment_omafe([1, 2], 0, 2)
    with pytest.raises(IndexError):
        segment_omafe([1, 2], 1, 0)


def test_segmentation_omafe_examples():
    assert segmentation_omafe([0, 10, 9, 10, 0], [0, 3, 4]) == (0.5, [(INC, 0.5), (DEC, 0)])
    assert segmentation_omafe([1, 2, 3], [0, 2])[0] == 0
    assert segmentation_omafe([0, 2, 1, 0, 2], [0, 4])[0] == 1


@pytest.mark.parametrize("bps", [[0], [1, 4], [0, 3], [0, 2, 2, 4], [0, 3, 2, 4]])
def test_segmentation_contract(bps):
    with pytest.raises(ValueError):
        segmentation_omafe([0, 10, 9, 10, 0], bps)


values_st = st.lists(st.integers(-5, 5).map(float), min_size=1, max_size=40)


@given(values_st, st.sampled_from([INC, DEC, FLAT]))
def test_fit_is_monotone_and_attains_error(values, direction):
    got = best_monotone_fit(values, direction)
    d = np.diff(got.fit)
    if direction is INC:
        assert np.all(d >= 0)
    elif direction is DEC:
        assert np.all(d <= 0)
    else:
        assert np.all(d == 0)
    assert np.max(np.abs(got.fit - values)) == got.error


@given(values_st, st.sampled_from([INC, DEC]), st.integers(0, 2**32 - 1))
def test_no_monotone_candidate_beats_the_fit(values, direction, seed):
    got = best_monotone_fit(values, direction)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        cand = got.fit + rng.normal(scale=0.5, size=len(values))
        cand = np.maximum.accumulate(cand) if direction is INC else np.minimum.accumulate(cand)
        assert np.max(np.abs(cand - values)) >= got.error


@given(values_st)
def test_whole_series_matches_endpoint_direction(values):
    if len(values) < 2:
        return
    direction, err = segment_omafe(values, 0, len(values) - 1)
    assert segmentation_omafe(values, [0, len(values) - 1])[0] == err
    assert best_monotone_fit(values, direction).error == err
