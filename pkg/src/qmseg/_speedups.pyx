# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot kernels; see ``qmseg._purepy`` for the reference."""

import numpy as np

from libc.math cimport fabs

BACKEND = "cython"


def dedup_first(ys):
    cdef const double[::1] v = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0], i, m = 0
    out = np.empty(n, dtype=np.int64)
    cdef long long[::1] o = out
    for i in range(n):
        if i == 0 or v[i] != v[i - 1]:
            o[m] = i
            m += 1
    return out[:m]


def find_extrema(values):
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t m = v.shape[0], p, c = 0
    if m < 2:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int8)
    pos = np.empty(m, dtype=np.int64)
    kind = np.empty(m, dtype=np.int8)
    cdef long long[::1] po = pos
    cdef signed char[::1] ko = kind
    cdef bint up_before, up_after
    po[0] = 0
    ko[0] = -1 if v[1] > v[0] else 1
    c = 1
    for p in range(1, m - 1):
        up_before = v[p] > v[p - 1]
        up_after = v[p + 1] > v[p]
        if up_before != up_after:
            po[c] = p
            ko[c] = 1 if up_before else -1
            c += 1
    po[c] = m - 1
    ko[c] = 1 if v[m - 1] > v[m - 2] else -1
    c += 1
    return pos[:c], kind[:c]


def scale_labels(values, pos, kind, trace=None):
    if trace is not None:
        from . import _purepy  # tracing is a debugging aid, not a hot path
        return _purepy.scale_labels(values, pos, kind, trace)
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef const long long[::1] ps = np.ascontiguousarray(pos, dtype=np.int64)
    cdef const signed char[::1] kd = np.ascontiguousarray(kind, dtype=np.int8)
    cdef Py_ssize_t count = ps.shape[0], e, top = 0
    labels = np.zeros(count, dtype=np.float64)
    cdef double[::1] lab = labels
    stack_arr = np.empty(count + 1, dtype=np.int64)
    cdef long long[::1] st = stack_arr
    cdef double de, second, gap
    cdef bint is_max
    # st[0..top) holds indices into pos; st[top-1] is First, st[top-2] Second
    for e in range(count):
        de = v[ps[e]]
        is_max = kd[e] > 0
        while top > 2:
            second = v[ps[st[top - 2]]]
            if not ((is_max and de >= second) or (not is_max and de <= second)):
                break
            gap = fabs(v[ps[st[top - 1]]] - second)
            lab[st[top - 1]] = gap
            lab[st[top - 2]] = gap
            top -= 2
        if top == 2:
            second = v[ps[st[0]]]
            if (is_max and de >= second) or (not is_max and de <= second):
                lab[st[0]] = fabs(v[ps[st[1]]] - second)
                st[0] = st[1]
                top = 1
        st[top] = e
        top += 1
    while top > 2:
        lab[st[top - 1]] = fabs(v[ps[st[top - 1]]] - v[ps[st[top - 2]]])
        top -= 1
    if top == 2:
        gap = fabs(v[ps[st[1]]] - v[ps[st[0]]])
        lab[st[0]] = gap
        lab[st[1]] = gap
    return labels


def select_budget(scale, Py_ssize_t k):
    cdef const double[::1] s = np.ascontiguousarray(scale, dtype=np.float64)
    cdef Py_ssize_t n = s.shape[0], cap = k + 2, size = 0, idx, lo, hi, mid, t
    buf_s = np.empty(cap + 1, dtype=np.float64)
    buf_i = np.empty(cap + 1, dtype=np.int64)
    cdef double[::1] bs = buf_s
    cdef long long[::1] bi = buf_i
    cdef double x
    for idx in range(n):
        x = s[idx]
        # first slot whose scale is strictly smaller (ties stay in arrival order)
        lo = 0
        hi = size
        while lo < hi:
            mid = (lo + hi) >> 1
            if bs[mid] >= x:
                lo = mid + 1
            else:
                hi = mid
        if lo >= cap:
            continue
        t = size
        while t > lo:
            bs[t] = bs[t - 1]
            bi[t] = bi[t - 1]
            t -= 1
        bs[lo] = x
        bi[lo] = idx
        if size < cap:
            size += 1
    if size == 0:
        return np.zeros(0, dtype=np.int64)
    x = bs[size - 1]
    kept = [bi[t] for t in range(size) if bs[t] != x]
    return np.asarray(sorted(kept), dtype=np.int64)


cdef inline double _sse(const double[::1] sx, const double[::1] sy, const double[::1] sxx,
                        const double[::1] sxy, const double[::1] syy,
                        Py_ssize_t p, Py_ssize_t q) noexcept nogil:
    cdef Py_ssize_t a = p, b = q + 1
    cdef double cnt = q - p + 1
    cdef double tx, ty, cxx, cxy, cyy, sse
    if q - p + 1 <= 2:
        return 0.0
    tx = sx[b] - sx[a]
    ty = sy[b] - sy[a]
    cxx = (sxx[b] - sxx[a]) - tx * tx / cnt
    cxy = (sxy[b] - sxy[a]) - tx * ty / cnt
    cyy = (syy[b] - syy[a]) - ty * ty / cnt
    if cxx > 0:
        sse = cyy - cxy * cxy / cxx
    else:
        sse = cyy
    return sse if sse > 0 else 0.0


def range_sse(sx, sy, sxx, sxy, syy, Py_ssize_t p, Py_ssize_t q):
    return _sse(sx, sy, sxx, sxy, syy, p, q)


def best_split(sx_, sy_, sxx_, sxy_, syy_, Py_ssize_t i, Py_ssize_t j):
    cdef const double[::1] sx = sx_, sy = sy_, sxx = sxx_, sxy = sxy_, syy = syy_
    cdef Py_ssize_t l, best_l = i
    cdef double c, best = 0.0
    for l in range(i, j):
        c = _sse(sx, sy, sxx, sxy, syy, i, l) + _sse(sx, sy, sxx, sxy, syy, l + 1, j)
        if l == i or c < best:
            best = c
            best_l = l
    return best_l, best


def bottom_up_merge(sx_, sy_, sxx_, sxy_, syy_, Py_ssize_t k):
    cdef const double[::1] sx = sx_, sy = sy_, sxx = sxx_, sxy = sxy_, syy = syy_
    cdef Py_ssize_t n = sx.shape[0] - 1, size = n, t, at
    starts_arr = np.arange(n, dtype=np.int64)
    ends_arr = np.arange(n, dtype=np.int64)
    seg_arr = np.zeros(n, dtype=np.float64)
    cost_arr = np.zeros(max(n - 1, 0), dtype=np.float64)
    cdef long long[::1] starts = starts_arr, ends = ends_arr
    cdef double[::1] seg = seg_arr, cost = cost_arr
    cdef double best
    with nogil:
        for t in range(n - 1):
            cost[t] = _sse(sx, sy, sxx, sxy, syy, starts[t], ends[t + 1]) - seg[t] - seg[t + 1]
        while size > k:
            at = 0
            best = cost[0]
            for t in range(1, size - 1):
                if cost[t] < best:
                    best = cost[t]
                    at = t
            ends[at] = ends[at + 1]
            seg[at] = _sse(sx, sy, sxx, sxy, syy, starts[at], ends[at])
            for t in range(at + 1, size - 1):
                starts[t] = starts[t + 1]
                ends[t] = ends[t + 1]
                seg[t] = seg[t + 1]
            for t in range(at, size - 2):
                cost[t] = cost[t + 1]
            size -= 1
            if at < size - 1:
                cost[at] = _sse(sx, sy, sxx, sxy, syy, starts[at], ends[at + 1]) - seg[at] - seg[at + 1]
            if at > 0:
                cost[at - 1] = _sse(sx, sy, sxx, sxy, syy, starts[at - 1], ends[at]) - seg[at - 1] - seg[at]
    return starts_arr[:size].copy()


cdef inline double _seg_error(const double[::1] v, Py_ssize_t s, Py_ssize_t e,
                              double hi, double lo, double fall, double rise) noexcept nogil:
    if v[e] > v[s]:
        return fall / 2
    if v[e] < v[s]:
        return rise / 2
    return (hi - lo) / 2


cdef inline void _heap_push(double[::1] hk, long long[::1] hs, long long[::1] he,
                            Py_ssize_t *size, double key, long long s, long long e) noexcept nogil:
    cdef Py_ssize_t i = size[0], parent
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if hk[parent] >= key:
            break
        hk[i] = hk[parent]
        hs[i] = hs[parent]
        he[i] = he[parent]
        i = parent
    hk[i] = key
    hs[i] = s
    he[i] = e


cdef inline void _heap_pop(double[::1] hk, long long[::1] hs, long long[::1] he,
                           Py_ssize_t *size) noexcept nogil:
    cdef Py_ssize_t n = size[0] - 1, i = 0, child
    cdef double key = hk[n]
    cdef long long s = hs[n], e = he[n]
    size[0] = n
    while True:
        child = 2 * i + 1
        if child >= n:
            break
        if child + 1 < n and hk[child + 1] > hk[child]:
            child += 1
        if hk[child] <= key:
            break
        hk[i] = hk[child]
        hs[i] = hs[child]
        he[i] = he[child]
        i = child
    if n > 0:
        hk[i] = key
        hs[i] = s
        he[i] = e


def cut_errors(values, pos_, order_, class_starts):
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef const long long[::1] pos = np.ascontiguousarray(pos_, dtype=np.int64)
    cdef const long long[::1] order = np.ascontiguousarray(order_, dtype=np.int64)
    cdef Py_ssize_t count = pos.shape[0], m = v.shape[0], i, r, x, a, b, c, p, nx, hsize = 0
    table_arr = np.full(count + 1, np.nan)
    cdef double[::1] table = table_arr
    is_start_arr = np.zeros(count + 1, dtype=np.uint8)
    is_start_arr[np.asarray(class_starts, dtype=np.int64)] = 1
    cdef const unsigned char[::1] is_start = is_start_arr

    cdef long long[::1] s_prev = np.arange(-1, count - 1, dtype=np.int64)
    cdef long long[::1] s_next = np.arange(1, count + 1, dtype=np.int64)
    s_next[count - 1] = -1
    cdef Py_ssize_t head = 0, tail = count - 1

    cdef long long[::1] b_prev = np.full(m, -1, dtype=np.int64)
    cdef long long[::1] b_next = np.full(m, -1, dtype=np.int64)
    cdef long long[::1] seg_end = np.full(m, -1, dtype=np.int64)
    cdef double[::1] seg_max = np.zeros(m)
    cdef double[::1] seg_min = np.zeros(m)
    cdef double[::1] seg_fall = np.zeros(m)
    cdef double[::1] seg_rise = np.zeros(m)
    # every merge pushes one entry: at most 2 * count live or stale entries
    cdef double[::1] hk = np.empty(2 * count + 2)
    cdef long long[::1] hs = np.empty(2 * count + 2, dtype=np.int64)
    cdef long long[::1] he = np.empty(2 * count + 2, dtype=np.int64)
    cdef Py_ssize_t drops[2]
    cdef int nd, d

    with nogil:
        for i in range(count - 1):
            a = pos[i]
            b = pos[i + 1]
            b_next[a] = b
            b_prev[b] = a
            seg_end[a] = b
            if v[a] < v[b]:
                seg_max[a] = v[b]
                seg_min[a] = v[a]
                seg_rise[a] = v[b] - v[a]
            else:
                seg_max[a] = v[a]
                seg_min[a] = v[b]
                seg_fall[a] = v[a] - v[b]
            _heap_push(hk, hs, he, &hsize,
                       _seg_error(v, a, b, seg_max[a], seg_min[a], seg_fall[a], seg_rise[a]),
                       a, b)

        for r in range(count, -1, -1):
            if r < count:
                x = order[r]
                nd = 0
                if x != head and x != tail:
                    drops[0] = pos[x]
                    nd = 1
                elif x == head and x == tail:
                    head = -1
                    tail = -1
                elif x == head:
                    head = s_next[x]
                    if head != tail:
                        drops[0] = pos[head]
                        nd = 1
                else:
                    tail = s_prev[x]
                    if tail != head:
                        drops[0] = pos[tail]
                        nd = 1
                for d in range(nd):
                    p = drops[d]
                    a = b_prev[p]
                    c = b_next[p]
                    seg_fall[a] = max(seg_fall[a], max(seg_fall[p], seg_max[a] - seg_min[p]))
                    seg_rise[a] = max(seg_rise[a], max(seg_rise[p], seg_max[p] - seg_min[a]))
                    seg_max[a] = max(seg_max[a], seg_max[p])
                    seg_min[a] = min(seg_min[a], seg_min[p])
                    seg_end[a] = c
                    b_next[a] = c
                    b_prev[c] = a
                    b_next[p] = -1
                    b_prev[p] = -1
                    _heap_push(hk, hs, he, &hsize,
                               _seg_error(v, a, c, seg_max[a], seg_min[a], seg_fall[a], seg_rise[a]),
                               a, c)
                p = s_prev[x]
                nx = s_next[x]
                if p != -1:
                    s_next[p] = nx
                if nx != -1:
                    s_prev[nx] = p
            if is_start[r] or r == count:
                while True:
                    a = hs[0]
                    if seg_end[a] == he[0] and (a == 0 or b_prev[a] != -1):
                        table[r] = hk[0]
                        break
                    _heap_pop(hk, hs, he, &hsize)
    return table_arr
