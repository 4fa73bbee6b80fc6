"""Time the compiled and pure-Python kernels on the same inputs.

Usage: python3 benchmarks/bench_core.py [--repeat N]

Each row reports the best of N runs per backend and the speed-up.  The
two backends are also checked to agree on every input before timing.
"""

from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from knotimage import core
from knotimage.knot.projection import frame


def _inputs(seed=0):
    rng = np.random.default_rng(seed)
    plane = rng.uniform(0, 1, size=(950, 950))
    kernel = rng.normal(size=(3, 3))
    pooled = rng.uniform(0, 1, size=(948, 948))
    # a long random closed curve seen along a generic direction
    curve = np.cumsum(rng.normal(size=(200, 3)), axis=0)
    e1, e2 = frame([0.3, 0.5, 0.8])
    xy = np.ascontiguousarray(np.stack([curve @ e1, curve @ e2], axis=1))
    poly = rng.uniform(-1, 1, size=(60, 3))
    return {
        "convolve3x3 950x950": lambda m: m.convolve3x3(plane, kernel),
        "softmax_pool 948->203": lambda m: m.softmax_pool(pooled, 203, 1.0),
        "segment_intersections n=200": lambda m: m.segment_intersections(xy, 1e-9),
        "reduce_polygon n=60": lambda m: m.reduce_polygon(poly, 1e-8),
    }


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.allclose(a, b, rtol=1e-12, atol=1e-12)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if "cython" not in core.available_backends():
        print("compiled extension not built; only the Python backend is available")
        return 1
    py, cy = core.backend_module("python"), core.backend_module("cython")
    print(f"{'kernel':30s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speed-up':>9s}")
    for name, fn in _inputs().items():
        if not _same(fn(py), fn(cy)):
            print(f"{name}: backends disagree")
            return 1
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:30s} {1e3 * t_py:12.2f} {1e3 * t_cy:12.2f} {t_py / t_cy:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
