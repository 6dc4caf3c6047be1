"""The compiled and pure-Python kernels must agree bit for bit."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmseg import TimeSeries, build_moments, build_spectrum_index, dedup_consecutive, label_extrema
from qmseg import _kernels, _purepy

speedups = pytest.importorskip("qmseg._speedups")

values_st = st.one_of(
    st.lists(st.integers(0, 5).map(float), min_size=2, max_size=80),
    st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=2, max_size=80),
)


@pytest.mark.skipif(bool(os.environ.get("QMSEG_PURE_PYTHON")), reason="fallback forced")
def test_compiled_backend_selected_by_default():
    assert _kernels.BACKEND == "cython"


def test_pure_python_backend_can_be_forced():
    env = dict(os.environ, QMSEG_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import qmseg; print(qmseg.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@given(values_st)
def test_dedup_and_extrema(ys):
    assert np.array_equal(_purepy.dedup_first(ys), speedups.dedup_first(ys))
    v = np.asarray(ys)[_purepy.dedup_first(ys)]
    if v.size < 2:
        return
    for a, b in zip(_purepy.find_extrema(v), speedups.find_extrema(v)):
        assert np.array_equal(a, b) and a.dtype == b.dtype


@given(values_st, st.integers(1, 30))
def test_labels_selection_and_cut_errors(ys, k):
    pre = dedup_consecutive(TimeSeries.from_values(ys))
    if len(pre) < 2:
        return
    pos, kind = _purepy.find_extrema(pre.values)
    labels = _purepy.scale_labels(pre.values, pos, kind)
    assert np.array_equal(labels, speedups.scale_labels(pre.values, pos, kind))
    assert np.array_equal(_purepy.select_budget(labels, k), speedups.select_budget(labels, k))
    index = build_spectrum_index(label_extrema(pre), pre)
    starts = np.flatnonzero(index.earliest_of_scale == np.arange(len(index)))
    a = _purepy.cut_errors(pre.values, pos, index.order, starts)
    b = speedups.cut_errors(pre.values, pos, index.order, starts)
    assert np.array_equal(a, b, equal_nan=True)


def test_compiled_labels_accept_a_trace():
    trace = []
    speedups.scale_labels(np.array([1.0, 3, 2, 4]), np.arange(4), np.array([-1, 1, -1, 1]), trace)
    assert [e for e, _ in trace].count("push") == 4


@given(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=3, max_size=60), st.integers(1, 10))
def test_regression_kernels(ys, k):
    args = build_moments(TimeSeries.from_values(ys)).kernel_args
    n = len(ys)
    for p in range(0, n, 3):
        for q in range(p, n, 2):
            assert _purepy.range_sse(*args, p, q) == speedups.range_sse(*args, p, q)
        if p < n - 1:
            assert _purepy.best_split(*args, p, n - 1) == speedups.best_split(*args, p, n - 1)
    k = min(k, n)
    assert np.array_equal(_purepy.bottom_up_merge(*args, k), speedups.bottom_up_merge(*args, k))
