"""Pure-Python/numpy implementations of the hot kernels.

Signatures mirror ``qmseg._speedups`` exactly so either backend can be
selected at import time.  Kind codes: ``+1`` maximum, ``-1`` minimum.
"""

from __future__ import annotations

from bisect import bisect_right

import numpy as np

BACKEND = "python"


def dedup_first(ys):
    """Indices of the first sample of every run of equal consecutive values."""
    ys = np.asarray(ys, dtype=np.float64)
    if ys.size == 0:
        return np.zeros(0, dtype=np.int64)
    keep = np.empty(ys.size, dtype=bool)
    keep[0] = True
    np.not_equal(ys[1:], ys[:-1], out=keep[1:])
    return np.flatnonzero(keep).astype(np.int64)


def find_extrema(values):
    """Positions and kinds of all strict extrema of a duplicate-free array."""
    v = np.asarray(values, dtype=np.float64)
    m = v.size
    if m < 2:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int8)
    rising = v[1:] > v[:-1]  # rising[i]: v[i+1] > v[i]
    # interior p is extremal when the slope flips between p-1 -> p and p -> p+1
    flips = rising[1:] != rising[:-1]
    pos = np.concatenate(([0], np.flatnonzero(flips) + 1, [m - 1])).astype(np.int64)
    kind = np.empty(pos.size, dtype=np.int8)
    kind[0] = -1 if rising[0] else 1
    kind[1:] = np.where(rising[pos[1:] - 1], 1, -1)
    return pos, kind


def scale_labels(values, pos, kind, trace=None):
    """Stack-based scale labeling of the extrema listed in ``pos``.

    Returns labels aligned with ``pos``.  When ``trace`` is a list, a snapshot
    ``(event, stack_positions)`` is appended after every push and pop so the
    stack discipline can be inspected.
    """
    v = np.asarray(values, dtype=np.float64).tolist()
    pos = np.asarray(pos, dtype=np.int64).tolist()
    kind = np.asarray(kind, dtype=np.int8).tolist()
    count = len(pos)
    labels = [0.0] * count
    stack: list[int] = []  # indices into pos; stack[-1] is First, stack[-2] Second

    def note(event):
        if trace is not None:
            trace.append((event, [pos[s] for s in stack]))

    for e in range(count):
        de = v[pos[e]]
        is_max = kind[e] > 0
        while len(stack) > 2:
            second = v[pos[stack[-2]]]
            if not (de >= second if is_max else de <= second):
                break
            first = stack.pop()
            note("pop")
            sec = stack.pop()
            note("pop")
            gap = abs(v[pos[first]] - v[pos[sec]])
            labels[first] = gap
            labels[sec] = gap
        if len(stack) == 2:
            second = v[pos[stack[0]]]
            if de >= second if is_max else de <= second:
                labels[stack[0]] = abs(v[pos[stack[1]]] - second)
                del stack[0]
                note("pop")
        stack.append(e)
        note("push")

    while len(stack) > 2:
        first = stack.pop()
        labels[first] = abs(v[pos[first]] - v[pos[stack[-1]]])
        note("pop")
    if len(stack) == 2:
        gap = abs(v[pos[stack[1]]] - v[pos[stack[0]]])
        labels[stack[0]] = gap
        labels[stack[1]] = gap
    return np.asarray(labels, dtype=np.float64)


def select_budget(scale, k):
    """Indices surviving the bounded top-(k+2) buffer and cut-class removal.

    The buffer is kept sorted by decreasing scale; when it would exceed
    ``k + 2`` entries the smallest is evicted.  Afterwards every entry sharing
    the smallest retained scale is dropped.  Result is in input order.
    """
    scale = np.asarray(scale, dtype=np.float64).tolist()
    cap = k + 2
    keys: list[float] = []  # negated scales, ascending
    items: list[int] = []
    for idx, s in enumerate(scale):
        at = bisect_right(keys, -s)
        if at >= cap:
            continue
        keys.insert(at, -s)
        items.insert(at, idx)
        if len(keys) > cap:
            keys.pop()
            items.pop()
    if not keys:
        return np.zeros(0, dtype=np.int64)
    cut = keys[-1]
    kept = [i for key, i in zip(keys, items) if key != cut]
    return np.asarray(sorted(kept), dtype=np.int64)


def range_sse(sx, sy, sxx, sxy, syy, p, q):
    """Least-squares residual sum over samples ``p..q`` from prefix sums."""
    cnt = q - p + 1
    if cnt <= 2:
        return 0.0
    a, b = p, q + 1
    tx = sx[b] - sx[a]
    ty = sy[b] - sy[a]
    cxx = (sxx[b] - sxx[a]) - tx * tx / cnt
    cxy = (sxy[b] - sxy[a]) - tx * ty / cnt
    cyy = (syy[b] - syy[a]) - ty * ty / cnt
    sse = cyy - cxy * cxy / cxx if cxx > 0 else cyy
    return sse if sse > 0 else 0.0


def _vector_sse(sx, sy, sxx, sxy, syy, p, q):
    p = np.asarray(p)
    q = np.asarray(q)
    cnt = (q - p + 1).astype(np.float64)
    a, b = p, q + 1
    tx = sx[b] - sx[a]
    ty = sy[b] - sy[a]
    with np.errstate(divide="ignore", invalid="ignore"):
        cxx = (sxx[b] - sxx[a]) - tx * tx / cnt
        cxy = (sxy[b] - sxy[a]) - tx * ty / cnt
        cyy = (syy[b] - syy[a]) - ty * ty / cnt
        sse = np.where(cxx > 0, cyy - cxy * cxy / cxx, cyy)
    sse = np.where(cnt <= 2, 0.0, sse)
    return np.maximum(sse, 0.0)


def best_split(sx, sy, sxx, sxy, syy, i, j):
    """Split point ``l`` in ``[i, j-1]`` minimising ``E(i,l) + E(l+1,j)``."""
    ls = np.arange(i, j, dtype=np.int64)
    cost = _vector_sse(sx, sy, sxx, sxy, syy, np.full_like(ls, i), ls) + _vector_sse(
        sx, sy, sxx, sxy, syy, ls + 1, np.full_like(ls, j)
    )
    at = int(np.argmin(cost))  # first minimum: smallest l
    return i + at, float(cost[at])


def bottom_up_merge(sx, sy, sxx, sxy, syy, k):
    """Greedy adjacent merging from singletons down to ``k`` ranges.

    Returns the start index of every surviving range.
    """
    n = len(sx) - 1
    starts = np.arange(n, dtype=np.int64)
    ends = starts.copy()
    seg = np.zeros(n, dtype=np.float64)

    def merge_cost(idx):
        p1, p3 = starts[idx], ends[idx + 1]
        return _vector_sse(sx, sy, sxx, sxy, syy, p1, p3) - seg[idx] - seg[idx + 1]

    cost = merge_cost(np.arange(n - 1))
    while starts.size > k:
        at = int(np.argmin(cost))  # first minimum: leftmost pair
        ends[at] = ends[at + 1]
        seg[at] = range_sse(sx, sy, sxx, sxy, syy, int(starts[at]), int(ends[at]))
        starts = np.delete(starts, at + 1)
        ends = np.delete(ends, at + 1)
        seg = np.delete(seg, at + 1)
        cost = np.delete(cost, at)
        if at < cost.size:
            cost[at] = merge_cost(at)
        if at > 0:
            cost[at - 1] = merge_cost(at - 1)
    return starts


def cut_errors(values, pos, order, class_starts):
    """Exact segmentation error for every cut of a scale-sorted extremum list.

    ``pos`` are extremum positions in ascending order, ``order[r]`` the index
    into ``pos`` of rank ``r``, and ``class_starts`` the ascending ranks where
    a new scale begins.  For cut ``c`` the survivors are ranks ``[0, c)``;
    breakpoints are both series ends plus every survivor except the first and
    last one.  Returns an array of length ``len(pos) + 1`` filled at every
    class start and at ``len(pos)``.

    Cuts are visited from ``len(pos)`` downwards.  Breakpoints only ever
    disappear, so adjacent segment summaries (max, min, largest fall, largest
    rise) are merged and the worst segment is tracked with a lazy heap.
    """
    import heapq

    v = np.asarray(values, dtype=np.float64).tolist()
    pos = np.asarray(pos, dtype=np.int64).tolist()
    order = np.asarray(order, dtype=np.int64).tolist()
    count = len(pos)
    table = np.full(count + 1, np.nan)

    # survivors: linked list over extremum indices
    s_prev = list(range(-1, count - 1))
    s_next = list(range(1, count + 1))
    s_next[-1] = -1
    head, tail = 0, count - 1

    m = len(v)
    b_prev = [-1] * m
    b_next = [-1] * m
    seg_end = [-1] * m
    seg_max = [0.0] * m
    seg_min = [0.0] * m
    seg_fall = [0.0] * m
    seg_rise = [0.0] * m
    heap = []

    def error(s):
        e = seg_end[s]
        if v[e] > v[s]:
            return seg_fall[s] / 2
        if v[e] < v[s]:
            return seg_rise[s] / 2
        return (seg_max[s] - seg_min[s]) / 2

    for a, b in zip(pos, pos[1:]):
        b_next[a], b_prev[b] = b, a
        seg_end[a] = b
        lo, hi = (v[a], v[b]) if v[a] < v[b] else (v[b], v[a])
        seg_max[a], seg_min[a] = hi, lo
        seg_fall[a] = v[a] - v[b] if v[a] > v[b] else 0.0
        seg_rise[a] = v[b] - v[a] if v[b] > v[a] else 0.0
        heap.append((-error(a), a, b))
    heapq.heapify(heap)

    def drop_breakpoint(p):
        a, c = b_prev[p], b_next[p]
        seg_fall[a] = max(seg_fall[a], seg_fall[p], seg_max[a] - seg_min[p])
        seg_rise[a] = max(seg_rise[a], seg_rise[p], seg_max[p] - seg_min[a])
        seg_max[a] = max(seg_max[a], seg_max[p])
        seg_min[a] = min(seg_min[a], seg_min[p])
        seg_end[a] = c
        b_next[a], b_prev[c] = c, a
        b_next[p] = b_prev[p] = -1
        heapq.heappush(heap, (-error(a), a, c))

    def worst():
        while True:
            neg, s, e = heap[0]
            if seg_end[s] == e and (s == 0 or b_prev[s] != -1):
                return -neg
            heapq.heappop(heap)

    table[count] = worst()
    starts = set(int(c) for c in class_starts)
    for r in range(count - 1, -1, -1):
        x = order[r]
        if x != head and x != tail:
            drop_breakpoint(pos[x])
        elif x == head and x == tail:
            head = tail = -1
        elif x == head:
            head = s_next[x]
            if head != tail:
                drop_breakpoint(pos[head])
        else:
            tail = s_prev[x]
            if tail != head:
                drop_breakpoint(pos[tail])
        p, n = s_prev[x], s_next[x]
        if p != -1:
            s_next[p] = n
        if n != -1:
            s_prev[n] = p
        if r in starts:
            table[r] = worst()
    return table
