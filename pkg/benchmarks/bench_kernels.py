"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends get identical integer inputs built from seeded families; the
script checks that their outputs agree before reporting timings.
"""

import argparse
import time

import numpy as np

from kpack import generators, kernels
from kpack.geometry import scaled_edges


def edge_arrays(fam):
    rings, owners = [], []
    for i, m in enumerate(fam):
        for r in m.rings():
            rings.append(r)
            owners.append(i)
    x1, y1, x2, y2, ring_of = scaled_edges(rings, fam.scale)
    return x1, y1, x2, y2, [owners[r] for r in ring_of]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        raise SystemExit("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`")

    cases = [
        ("segment_contacts", "discs n=20", generators.gen_discs(20, seed=1)),
        ("segment_contacts", "discs n=60", generators.gen_discs(60, seed=1, size=(6, 14))),
        ("segment_contacts", "stars n=60", generators.gen_stars(60, seed=1)),
    ]
    print(f"{'kernel':<18}{'input':<16}{'python ms':>11}{'cython ms':>11}{'speedup':>9}")
    for name, label, fam in cases:
        arrays = edge_arrays(fam)
        tp, a = best_of(lambda: kernels.segment_contacts(*arrays, backend="python"), args.repeat)
        tc, b = best_of(lambda: kernels.segment_contacts(*arrays, backend="cython"), args.repeat)
        assert a == b
        print(f"{name:<18}{label:<16}{tp * 1e3:>11.2f}{tc * 1e3:>11.2f}{tp / tc:>9.1f}")

    for label, fam, grid in [
        ("stars n=10", generators.gen_stars(10, seed=2, window=(0, 0, 30, 30)), 200),
        ("stars n=30", generators.gen_stars(30, seed=2, window=(0, 0, 60, 60)), 400),
    ]:
        x1, y1, x2, y2, owner = edge_arrays(fam)
        step = max(1, 60 * fam.scale // grid)
        call = (x1, y1, x2, y2, owner, len(fam), -fam.scale, -fam.scale, step, grid, grid)
        tp, a = best_of(lambda: kernels.raster_coverage(*call, backend="python"), args.repeat)
        tc, b = best_of(lambda: kernels.raster_coverage(*call, backend="cython"), args.repeat)
        assert np.array_equal(a, b)
        print(f"{'raster_coverage':<18}{label + f' {grid}^2':<16}{tp * 1e3:>11.2f}{tc * 1e3:>11.2f}{tp / tc:>9.1f}")


if __name__ == "__main__":
    main()
