import numpy as np
import pytest
from hypothesis import given, strategies as st

from knotimage.curve import ClosedPolyline, build_curve
from knotimage.knot import (
    CrossingCapExceeded,
    HomflyPolynomial,
    curve_invariant,
    curve_invariant_detail,
    knot_name,
    min_crossings,
    project,
    reduce_curve,
)
from knotimage.knot.homfly import homfly
from shapes import random_polygon, random_rotation, square, trefoil


def test_trefoil_curves():
    right = curve_invariant(trefoil())
    left = curve_invariant(trefoil(handed=-1))
    assert right != 1
    assert left == right.mirror()
    assert {knot_name(right), knot_name(left)} == {"3_1", "3_1*"}


def test_planar_polygon_is_unknot():
    assert curve_invariant(square()) == 1
    t = np.linspace(0, 2 * np.pi, 20, endpoint=False)
    circle = np.stack([np.cos(t), np.sin(t), np.zeros_like(t)], axis=1)
    assert curve_invariant(circle) == 1


def test_degenerate_curve_is_unknot():
    c = build_curve(np.zeros((5, 3)))
    assert c.degenerate
    res = curve_invariant_detail(c)
    assert res.polynomial == 1 and res.direction is None
    assert min_crossings(c) == 0


def _scaled_motion(rng, v):
    q = random_rotation(rng)
    return float(rng.uniform(0.1, 10.0)) * v @ q.T + rng.normal(size=3)


@given(st.integers(0, 2**32 - 1))
def test_rigid_motion_and_scaling(seed):
    rng = np.random.default_rng(seed)
    v = random_polygon(rng, 10)
    p = curve_invariant(v, cap=40)
    assert curve_invariant(_scaled_motion(rng, v), cap=40) == p


@given(st.integers(0, 2**32 - 1))
def test_mirror_and_reversal(seed):
    rng = np.random.default_rng(seed)
    v = random_polygon(rng, 10)
    p = curve_invariant(v, cap=40)
    assert curve_invariant(v * np.array([1.0, 1.0, -1.0]), cap=40) == p.mirror()
    assert curve_invariant(v[::-1], cap=40) == p


@given(st.integers(0, 2**32 - 1))
def test_reduction_keeps_knot_type(seed):
    rng = np.random.default_rng(seed)
    v = random_polygon(rng, 9)
    w = reduce_curve(v)
    assert 3 <= len(w) <= len(v)
    # reduced vertices are a subsequence of the originals
    idx = [int(np.flatnonzero((v == x).all(axis=1))[0]) for x in w]
    k = int(np.argmin(idx))
    assert idx[k:] + idx[:k] == sorted(idx)
    d = rng.normal(size=3)
    full = homfly(project(v, d), cap=60)
    assert curve_invariant(w, reduce=False, cap=40) == full


def test_cap_is_enforced():
    v = trefoil(n=12)
    with pytest.raises(CrossingCapExceeded):
        curve_invariant(v, cap=2, reduce=False)
    res = curve_invariant_detail(v)
    assert res.n_crossings >= 3 and res.direction is not None
    assert min_crossings(v) == res.n_crossings


def test_closed_polyline_input():
    c = ClosedPolyline("t", trefoil(), 0, False)
    assert curve_invariant(c) == curve_invariant(trefoil())


def test_samples_validation():
    with pytest.raises(ValueError):
        curve_invariant(trefoil(), samples=0)
