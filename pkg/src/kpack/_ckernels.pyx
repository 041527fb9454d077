# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_py``.

Inputs must be int64 arrays whose magnitudes respect ``SEGMENT_LIMIT`` / ``RASTER_LIMIT`` so
that every intermediate product fits in a signed 64-bit integer.
"""

import numpy as np
cimport numpy as cnp

ctypedef long long i64

SEGMENT_LIMIT = 1 << 30
RASTER_LIMIT = 1 << 20


cdef inline int sgn(i64 v) nogil:
    return (v > 0) - (v < 0)


cdef inline i64 orient(i64 ax, i64 ay, i64 bx, i64 by, i64 cx, i64 cy) nogil:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


cdef inline bint on_box(i64 ax, i64 ay, i64 bx, i64 by, i64 px, i64 py) nogil:
    return (min(ax, bx) <= px <= max(ax, bx)) and (min(ay, by) <= py <= max(ay, by))


cdef inline int classify(i64 ax, i64 ay, i64 bx, i64 by,
                         i64 cx, i64 cy, i64 dx, i64 dy) nogil:
    cdef int d1 = sgn(orient(cx, cy, dx, dy, ax, ay))
    cdef int d2 = sgn(orient(cx, cy, dx, dy, bx, by))
    cdef int d3 = sgn(orient(ax, ay, bx, by, cx, cy))
    cdef int d4 = sgn(orient(ax, ay, bx, by, dx, dy))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return 1
    if d1 == 0 and on_box(cx, cy, dx, dy, ax, ay):
        return 2
    if d2 == 0 and on_box(cx, cy, dx, dy, bx, by):
        return 2
    if d3 == 0 and on_box(ax, ay, bx, by, cx, cy):
        return 2
    if d4 == 0 and on_box(ax, ay, bx, by, dx, dy):
        return 2
    return 0


cdef inline i64 floordiv(i64 a, i64 b) nogil:
    # b > 0
    cdef i64 q = a / b
    if (a % b != 0) and (a < 0):
        q -= 1
    return q


def segment_contacts(x1, y1, x2, y2, owner):
    cdef i64[::1] ax = np.ascontiguousarray(x1, dtype=np.int64)
    cdef i64[::1] ay = np.ascontiguousarray(y1, dtype=np.int64)
    cdef i64[::1] bx = np.ascontiguousarray(x2, dtype=np.int64)
    cdef i64[::1] by = np.ascontiguousarray(y2, dtype=np.int64)
    cdef i64[::1] own = np.ascontiguousarray(owner, dtype=np.int64)
    cdef Py_ssize_t n = ax.shape[0]
    lo_np = np.minimum(np.asarray(ax), np.asarray(bx))
    cdef i64[::1] xlo = lo_np
    cdef i64[::1] xhi = np.maximum(np.asarray(ax), np.asarray(bx))
    cdef i64[::1] ylo = np.minimum(np.asarray(ay), np.asarray(by))
    cdef i64[::1] yhi = np.maximum(np.asarray(ay), np.asarray(by))
    cdef i64[::1] order = np.argsort(lo_np, kind="stable").astype(np.int64)
    cdef Py_ssize_t p, q, i, j
    cdef i64 right
    cdef int code
    out = []
    for p in range(n):
        i = order[p]
        right = xhi[i]
        for q in range(p + 1, n):
            j = order[q]
            if xlo[j] > right:
                break
            if own[i] == own[j]:
                continue
            if ylo[j] > yhi[i] or ylo[i] > yhi[j]:
                continue
            code = classify(ax[i], ay[i], bx[i], by[i], ax[j], ay[j], bx[j], by[j])
            if code:
                if i < j:
                    out.append((i, j, code))
                else:
                    out.append((j, i, code))
    out.sort()
    return out


def raster_coverage(ex1, ey1, ex2, ey2, owner, int n_members,
                    i64 x0, i64 y0, i64 step, Py_ssize_t nx, Py_ssize_t ny):
    cdef i64[::1] ax = np.ascontiguousarray(ex1, dtype=np.int64)
    cdef i64[::1] ay = np.ascontiguousarray(ey1, dtype=np.int64)
    cdef i64[::1] bx = np.ascontiguousarray(ex2, dtype=np.int64)
    cdef i64[::1] by = np.ascontiguousarray(ey2, dtype=np.int64)
    own_np = np.ascontiguousarray(owner, dtype=np.int64)
    cdef i64[::1] own = own_np
    cover_np = np.zeros((ny, nx), dtype=np.int32)
    cdef int[:, ::1] cover = cover_np
    flips_np = np.zeros(nx + 1, dtype=np.int8)
    on_np = np.zeros(nx, dtype=np.int8)
    cdef signed char[::1] flips = flips_np
    cdef signed char[::1] on = on_np
    cdef Py_ssize_t ne = ax.shape[0]
    cdef Py_ssize_t e, row, col, lo_row, hi_row, c_lo, c_hi
    cdef i64 ymin, ymax, yc, lo, hi, den, num, q, r, d
    cdef int m, par
    for m in range(n_members):
        ymin = 0
        ymax = 0
        first = True
        for e in range(ne):
            if own[e] != m:
                continue
            if first:
                ymin = min(ay[e], by[e])
                ymax = max(ay[e], by[e])
                first = False
            else:
                ymin = min(ymin, min(ay[e], by[e]))
                ymax = max(ymax, max(ay[e], by[e]))
        if first:
            continue
        lo_row = max(0, -floordiv(y0 - ymin, step))
        hi_row = min(ny - 1, floordiv(ymax - y0, step))
        for row in range(lo_row, hi_row + 1):
            yc = y0 + row * step
            for col in range(nx + 1):
                flips[col] = 0
            for col in range(nx):
                on[col] = 0
            for e in range(ne):
                if own[e] != m:
                    continue
                if ay[e] == by[e]:
                    if ay[e] == yc:
                        lo = min(ax[e], bx[e])
                        hi = max(ax[e], bx[e])
                        c_lo = max(0, -floordiv(x0 - lo, step))
                        c_hi = min(nx - 1, floordiv(hi - x0, step))
                        for col in range(c_lo, c_hi + 1):
                            on[col] = 1
                    continue
                if ay[e] == yc and (ax[e] - x0) - floordiv(ax[e] - x0, step) * step == 0:
                    col = floordiv(ax[e] - x0, step)
                    if 0 <= col < nx:
                        on[col] = 1
                if not (min(ay[e], by[e]) <= yc < max(ay[e], by[e])):
                    continue
                den = by[e] - ay[e]
                num = ax[e] * den + (yc - ay[e]) * (bx[e] - ax[e])
                if den < 0:
                    num = -num
                    den = -den
                d = step * den
                q = floordiv(num - x0 * den, d)
                r = (num - x0 * den) - q * d
                if r == 0 and 0 <= q < nx:
                    on[q] = 1
                col = min(max(q + 1, 0), nx)
                flips[col] ^= 1
            par = 0
            for col in range(nx):
                par ^= flips[col]
                if par or on[col]:
                    cover[row, col] += 1
    return cover_np
