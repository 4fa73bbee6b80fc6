import numpy as np
import pytest
from hypothesis import given, strategies as st

from knotimage.knot import DegenerateProjection, NoValidDirection, choose_direction, fibonacci_directions, project, rank_directions
from oracles import brute_crossings
from shapes import random_polygon, square, trefoil


def test_fibonacci_directions_are_unit_and_fixed():
    d = fibonacci_directions(64)
    assert d.shape == (64, 3)
    np.testing.assert_allclose(np.linalg.norm(d, axis=1), 1.0, atol=1e-12)
    np.testing.assert_array_equal(d, fibonacci_directions(64))
    # roughly balanced over the two hemispheres
    assert (d[:, 2] > 0).sum() == 32


def test_square_along_normal_has_no_crossings():
    diag = project(square(), [0.1, 0.2, 1.0])
    assert diag.n_crossings == 0


def test_in_plane_direction_is_degenerate():
    with pytest.raises(DegenerateProjection) as info:
        project(square(), [1.0, 0.0, 0.0])
    assert info.value.reason == "edge_collapse"


def test_trefoil_projection():
    v = trefoil()
    diag = project(v, [0, 0, 1])
    assert diag.n_crossings == 3
    assert len(set(diag.signs)) == 1
    ref = brute_crossings(v, [0, 0, 1])
    assert sorted(s for s, _, _ in ref) == sorted(diag.signs)
    mirrored = project(trefoil(handed=-1), [0, 0, 1])
    assert sorted(mirrored.signs) == sorted(-s for s in diag.signs)


@given(st.integers(0, 2**32 - 1))
def test_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    v = random_polygon(rng, 9)
    d = rng.normal(size=3)
    diag = project(v, d)
    ref = brute_crossings(v, d)
    got = sorted((x.sign, x.over_edge, x.under_edge) for x in diag.crossings)
    assert got == sorted(ref)
    # each crossing visited twice, once over and once under
    seq = diag.components[0]
    assert len(seq) == 2 * diag.n_crossings


@given(st.integers(0, 2**32 - 1))
def test_viewing_from_behind_mirrors(seed):
    rng = np.random.default_rng(seed)
    v = random_polygon(rng, 8)
    d = rng.normal(size=3)
    front = project(v, d)
    back = project(v, -d)
    assert front.n_crossings == back.n_crossings
    assert sum(front.signs) == sum(back.signs)


def test_rank_directions():
    v = trefoil(n=12)
    ranked = rank_directions(v, 32)
    counts = [r.n_crossings for r in ranked]
    assert counts == sorted(counts)
    assert ranked[0].n_crossings >= 3
    np.testing.assert_array_equal(choose_direction(v, 32), ranked[0].direction)
    with pytest.raises(ValueError):
        rank_directions(v, 0)


def test_all_directions_degenerate():
    # a segment folded back on itself overlaps in every view
    flat = np.array([[0, 0, 0], [1, 0, 0], [2, 0, 0]], float)
    with pytest.raises(NoValidDirection):
        choose_direction(flat, 16)
