"""Backend selection for the hot kernels.

The compiled extension is used when it imported successfully and the input
magnitudes fit its 64-bit arithmetic; otherwise the pure-Python version
runs.  Set ``KPACK_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

PROPER = _kernels_py.PROPER
DEGENERATE = _kernels_py.DEGENERATE

_compiled = None
if os.environ.get("KPACK_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _fits(limit, *seqs):
    for seq in seqs:
        for v in seq:
            if not -limit < v < limit:
                return False
    return True


def segment_contacts(x1, y1, x2, y2, owner, backend=None):
    """See ``_kernels_py.segment_contacts``."""
    use = backend or BACKEND
    if use == "cython" and _compiled is not None and _fits(_compiled.SEGMENT_LIMIT, x1, y1, x2, y2):
        return _compiled.segment_contacts(x1, y1, x2, y2, owner)
    return _kernels_py.segment_contacts(x1, y1, x2, y2, owner)


def raster_coverage(ex1, ey1, ex2, ey2, owner, n_members, x0, y0, step, nx, ny, backend=None):
    """See ``_kernels_py.raster_coverage``."""
    use = backend or BACKEND
    extent = (x0, y0, x0 + step * nx, y0 + step * ny)
    if use == "cython" and _compiled is not None and _fits(_compiled.RASTER_LIMIT, ex1, ey1, ex2, ey2, extent):
        return _compiled.raster_coverage(ex1, ey1, ex2, ey2, owner, n_members, x0, y0, step, nx, ny)
    return _kernels_py.raster_coverage(ex1, ey1, ex2, ey2, owner, n_members, x0, y0, step, nx, ny)
