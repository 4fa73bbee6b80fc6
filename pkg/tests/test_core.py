"""The compiled and numpy backends agree on every hot kernel."""

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from knotimage import core
from oracles import direct_convolve

BACKENDS = core.available_backends()
finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@pytest.fixture(params=BACKENDS, scope="module")
def backend(request):
    return core.backend_module(request.param)


def test_backend_selected_at_import():
    assert core.BACKEND in BACKENDS
    assert "python" in BACKENDS


def test_use_backend_round_trip():
    before = core.BACKEND
    prev = core.use_backend("python")
    assert core.BACKEND == "python"
    core.use_backend(prev)
    assert core.BACKEND == before
    with pytest.raises(ValueError):
        core.use_backend("fortran")


@given(arrays(np.float64, st.tuples(st.integers(3, 12), st.integers(3, 12)), elements=finite),
       arrays(np.float64, (3, 3), elements=finite))
def test_convolve_matches_direct_sum(backend, plane, kernel):
    out = backend.convolve3x3(plane, kernel)
    ref = direct_convolve(plane.tolist(), kernel.tolist())
    np.testing.assert_allclose(out, ref, rtol=1e-12, atol=1e-9)


@given(arrays(np.float64, st.tuples(st.integers(3, 20), st.integers(3, 20)), elements=finite),
       arrays(np.float64, (3, 3), elements=finite))
def test_convolve_backends_identical(plane, kernel):
    outs = [core.backend_module(b).convolve3x3(plane, kernel) for b in BACKENDS]
    for o in outs[1:]:
        np.testing.assert_array_equal(o, outs[0])


@given(st.integers(2, 30), st.integers(0, 20), st.floats(0.05, 10), st.integers(0, 2**32 - 1))
def test_softmax_pool_backends_agree(target, extra, tau, seed):
    side = target + extra
    plane = np.random.default_rng(seed).normal(0, 50, size=(side, side))
    outs = [core.backend_module(b).softmax_pool(plane, target, tau) for b in BACKENDS]
    for o in outs[1:]:
        np.testing.assert_allclose(o, outs[0], rtol=1e-12, atol=1e-12)


def test_balanced_windows():
    starts, sizes = core._pycore.balanced_bounds(10, 3)
    assert list(sizes) == [4, 3, 3]
    assert list(starts) == [0, 4, 7]


@given(st.integers(4, 14), st.integers(0, 2**32 - 1))
def test_segment_intersections_backends_agree(n, seed):
    xy = np.random.default_rng(seed).uniform(-1, 1, size=(n, 2))
    res = [core.backend_module(b).segment_intersections(xy, 1e-9) for b in BACKENDS]
    for r in res[1:]:
        for a, b in zip(r, res[0]):
            np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


def test_segment_intersections_flags(backend):
    # two crossing diagonals of a bow tie
    xy = np.array([[0, 0], [1, 1], [1, 0], [0, 1]], dtype=float)
    ii, jj, s, t, f = backend.segment_intersections(xy, 1e-9)
    assert list(zip(ii, jj)) == [(0, 2)]
    assert f[0] == core.PROPER
    np.testing.assert_allclose([s[0], t[0]], [0.5, 0.5])
    # a vertex lying on a non-adjacent edge
    xy = np.array([[0, 0], [2, 0], [1, 0], [1, 1]], dtype=float)
    _, _, _, _, f = backend.segment_intersections(xy, 1e-9)
    assert core.PARALLEL_OVERLAP in f or core.NEAR_ENDPOINT in f


@given(st.integers(4, 16), st.integers(0, 2**32 - 1))
def test_reduce_polygon_backends_agree(n, seed):
    pts = np.random.default_rng(seed).uniform(-1, 1, size=(n, 3))
    outs = [core.backend_module(b).reduce_polygon(pts, 1e-8) for b in BACKENDS]
    for o in outs[1:]:
        np.testing.assert_array_equal(o, outs[0])
    for i in range(n):
        flags = {bool(core.backend_module(b).triangle_blocked(pts, i, 1e-8)) for b in BACKENDS}
        assert len(flags) == 1


def test_reduce_saddle_unknot_to_triangle(backend):
    t = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    pts = np.stack([np.cos(t), np.sin(t), 0.3 * np.sin(2 * t)], axis=1)
    assert len(backend.reduce_polygon(pts, 1e-8)) == 3


def test_coplanar_edges_block_conservatively(backend):
    # planar curves are left alone: a coplanar edge always blocks
    t = np.linspace(0, 2 * np.pi, 8, endpoint=False)
    pts = np.stack([np.cos(t), np.sin(t), np.zeros_like(t)], axis=1)
    assert len(backend.reduce_polygon(pts, 1e-8)) == 8


def test_reduce_keeps_input_unchanged(backend):
    pts = np.random.default_rng(1).uniform(-1, 1, size=(10, 3))
    before = pts.copy()
    backend.reduce_polygon(pts, 1e-8)
    np.testing.assert_array_equal(pts, before)


def test_missing_extension_falls_back_to_python():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['knotimage._ccore'] = None\n"
        "from knotimage import core; print(core.BACKEND, core.available_backends())"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True).stdout
    assert out.strip() == "python ['python']"


def test_pipeline_identical_under_both_backends():
    from knotimage.knot import curve_invariant
    from shapes import random_polygon

    rng = np.random.default_rng(12)
    curves = [random_polygon(rng, 12) for _ in range(5)]
    before = core.BACKEND
    try:
        results = {}
        for name in BACKENDS:
            core.use_backend(name)
            results[name] = [curve_invariant(v, cap=60) for v in curves]
    finally:
        core.use_backend(before)
    assert all(r == results["python"] for r in results.values())


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")
def test_benchmark_script_runs(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks/bench_core.py"
    spec = importlib.util.spec_from_file_location("bench_core", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--repeat", "1"]) == 0
    assert "speed-up" in capsys.readouterr().out
