"""From a closed polyline to its HOMFLY polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .. import core
from ..curve import ClosedPolyline
from .homfly import DEFAULT_CAP, CrossingCapExceeded, homfly
from .polynomial import HomflyPolynomial
from .projection import DegenerateProjection, NoValidDirection, rank_directions

DEFAULT_SAMPLES = 64
REDUCE_TOL = 1e-8


class DegenerateCurve(ValueError):
    pass


@dataclass(frozen=True)
class InvariantResult:
    polynomial: HomflyPolynomial
    direction: Optional[Tuple[float, float, float]]
    n_crossings: int
    n_vertices: int


def _vertices(curve) -> np.ndarray:
    if isinstance(curve, ClosedPolyline):
        if curve.degenerate:
            raise DegenerateCurve(f"curve {curve.image_id!r} is degenerate")
        return curve.vertices
    return np.asarray(curve, dtype=np.float64)


def reduce_curve(vertices, tol: float = REDUCE_TOL, restarts: Optional[int] = None) -> np.ndarray:
    """Drop vertices whose spanning triangle no other edge meets.

    Each removal is an ambient isotopy, so the knot type is unchanged while
    the projection gets far fewer crossings.  The greedy sweep is repeated
    from ``restarts`` evenly spaced starting vertices (default: every
    vertex) and the shortest result wins, earliest start on ties.  ``tol``
    is relative to the curve's bounding-box diagonal; near misses keep the
    vertex.
    """
    v = np.asarray(vertices, dtype=np.float64)
    n = len(v)
    diam = float(np.linalg.norm(v.max(axis=0) - v.min(axis=0)))
    if diam == 0 or n <= 3:
        return v.copy()
    starts = range(n) if restarts is None else sorted({(k * n) // restarts for k in range(restarts)})
    best = None
    for r in starts:
        w = core.reduce_polygon(np.roll(v, -r, axis=0), tol * diam)
        if best is None or len(w) < len(best):
            best = w
            if len(best) == 3:
                break
    return best


def min_crossings(curve, samples: int = DEFAULT_SAMPLES, reduce: bool = True) -> int:
    """Fewest crossings over the sampled directions (0 for degenerate curves)."""
    if isinstance(curve, ClosedPolyline) and curve.degenerate:
        return 0
    v = _vertices(curve)
    if reduce:
        v = reduce_curve(v)
    if len(v) <= 3:
        return 0
    ranked = rank_directions(v, samples)
    if not ranked:
        raise NoValidDirection(f"all {samples} sampled directions are degenerate")
    return ranked[0].n_crossings


def curve_invariant_detail(
    curve,
    samples: int = DEFAULT_SAMPLES,
    cap: int = DEFAULT_CAP,
    reduce: bool = True,
) -> InvariantResult:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if isinstance(curve, ClosedPolyline) and curve.degenerate:
        return InvariantResult(HomflyPolynomial.one(), None, 0, len(curve))
    v = _vertices(curve)
    if reduce:
        v = reduce_curve(v)
    if len(v) <= 3:
        # every triangle is unknotted
        return InvariantResult(HomflyPolynomial.one(), None, 0, len(v))
    ranked = rank_directions(v, samples)
    if not ranked:
        raise NoValidDirection(f"all {samples} sampled directions are degenerate")
    best = ranked[0]
    if best.n_crossings > cap:
        raise CrossingCapExceeded(best.n_crossings, cap)
    poly = homfly(best.diagram, cap)
    return InvariantResult(poly, tuple(float(x) for x in best.direction), best.n_crossings, len(v))


def curve_invariant(
    curve,
    samples: int = DEFAULT_SAMPLES,
    cap: int = DEFAULT_CAP,
    reduce: bool = True,
) -> HomflyPolynomial:
    """HOMFLY polynomial of a closed polyline (degenerate curves give 1)."""
    return curve_invariant_detail(curve, samples, cap, reduce).polynomial
