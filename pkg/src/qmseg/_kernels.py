"""Backend selection for the hot kernels.

The compiled ``_speedups`` module is used when it imports cleanly; setting
``QMSEG_PURE_PYTHON=1`` forces the numpy/pure-Python fallback.
"""

import os

if os.environ.get("QMSEG_PURE_PYTHON"):
    from . import _purepy as impl
else:
    try:
        from . import _speedups as impl
    except ImportError:
        from . import _purepy as impl

BACKEND = impl.BACKEND
dedup_first = impl.dedup_first
find_extrema = impl.find_extrema
scale_labels = impl.scale_labels
select_budget = impl.select_budget
range_sse = impl.range_sse
best_split = impl.best_split
bottom_up_merge = impl.bottom_up_merge
cut_errors = impl.cut_errors
