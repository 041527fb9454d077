"""Pure-Python implementations of the hot kernels.

Both kernels work on integer coordinates (callers scale rationals by a
common denominator first), so every comparison here is exact.  The compiled
module ``_ckernels`` implements the same two functions with identical
results; ``kpack.kernels`` picks one at import time.
"""

import numpy as np

PROPER = 1
DEGENERATE = 2


def _orient(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _sign(v):
    return (v > 0) - (v < 0)


def _on_box(ax, ay, bx, by, px, py):
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def classify_pair(ax, ay, bx, by, cx, cy, dx, dy):
    """0 = disjoint, 1 = proper crossing, 2 = any other contact."""
    d1 = _sign(_orient(cx, cy, dx, dy, ax, ay))
    d2 = _sign(_orient(cx, cy, dx, dy, bx, by))
    d3 = _sign(_orient(ax, ay, bx, by, cx, cy))
    d4 = _sign(_orient(ax, ay, bx, by, dx, dy))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return PROPER
    if d1 == 0 and _on_box(cx, cy, dx, dy, ax, ay):
        return DEGENERATE
    if d2 == 0 and _on_box(cx, cy, dx, dy, bx, by):
        return DEGENERATE
    if d3 == 0 and _on_box(ax, ay, bx, by, cx, cy):
        return DEGENERATE
    if d4 == 0 and _on_box(ax, ay, bx, by, dx, dy):
        return DEGENERATE
    return 0


def segment_contacts(x1, y1, x2, y2, owner):
    """Report every touching pair of segments with different owners.

    Returns a list of ``(i, j, code)`` with ``i < j`` and ``code`` one of
    PROPER or DEGENERATE.  Uses a sweep over x-extents, so cost is
    proportional to the number of pairs whose bounding boxes overlap.
    """
    n = len(x1)
    x1 = [int(v) for v in x1]
    y1 = [int(v) for v in y1]
    x2 = [int(v) for v in x2]
    y2 = [int(v) for v in y2]
    owner = [int(v) for v in owner]
    xlo = [min(a, b) for a, b in zip(x1, x2)]
    xhi = [max(a, b) for a, b in zip(x1, x2)]
    ylo = [min(a, b) for a, b in zip(y1, y2)]
    yhi = [max(a, b) for a, b in zip(y1, y2)]
    order = sorted(range(n), key=xlo.__getitem__)
    out = []
    for pos, i in enumerate(order):
        right = xhi[i]
        for q in range(pos + 1, n):
            j = order[q]
            if xlo[j] > right:
                break
            if owner[i] == owner[j]:
                continue
            if ylo[j] > yhi[i] or ylo[i] > yhi[j]:
                continue
            code = classify_pair(x1[i], y1[i], x2[i], y2[i], x1[j], y1[j], x2[j], y2[j])
            if code:
                out.append((i, j, code) if i < j else (j, i, code))
    out.sort()
    return out


def raster_coverage(ex1, ey1, ex2, ey2, owner, n_members, x0, y0, step, nx, ny):
    """Count, for each cell centre, the members whose closed region holds it.

    Centre of cell ``(row, col)`` is ``(x0 + col*step, y0 + row*step)``.
    Edges are the boundary rings of each member (shells and hole loops
    together); membership is even-odd parity of crossings strictly left of
    the centre, plus every centre lying exactly on the boundary.
    """
    cover = np.zeros((ny, nx), dtype=np.int32)
    by_member = [[] for _ in range(n_members)]
    for a, b, c, d, m in zip(ex1, ey1, ex2, ey2, owner):
        by_member[int(m)].append((int(a), int(b), int(c), int(d)))
    for edges in by_member:
        if not edges:
            continue
        ys = [e[1] for e in edges] + [e[3] for e in edges]
        lo_row = max(0, -((y0 - min(ys)) // step))
        hi_row = min(ny - 1, (max(ys) - y0) // step)
        for row in range(lo_row, hi_row + 1):
            yc = y0 + row * step
            flips = np.zeros(nx + 1, dtype=np.int8)
            on = np.zeros(nx, dtype=bool)
            for ax, ay, bx, by in edges:
                if ay == by:
                    if ay == yc:
                        lo, hi = min(ax, bx), max(ax, bx)
                        c_lo = max(0, -((x0 - lo) // step))
                        c_hi = min(nx - 1, (hi - x0) // step)
                        if c_lo <= c_hi:
                            on[c_lo:c_hi + 1] = True
                    continue
                if ay == yc and (ax - x0) % step == 0:
                    col = (ax - x0) // step
                    if 0 <= col < nx:
                        on[col] = True
                if not (min(ay, by) <= yc < max(ay, by)):
                    continue
                den = by - ay
                num = ax * den + (yc - ay) * (bx - ax)
                if den < 0:
                    num, den = -num, -den
                q, r = divmod(num - x0 * den, step * den)
                if r == 0 and 0 <= q < nx:
                    on[q] = True
                flips[min(max(q + 1, 0), nx)] ^= 1
            inside = np.bitwise_xor.accumulate(flips[:nx]).astype(bool) | on
            cover[row] += inside
    return cover
