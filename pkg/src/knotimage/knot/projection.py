"""Orthogonal projection of closed polygons to signed Gauss diagrams."""

from __future__ import annotations

import math
from typing import List, NamedTuple, Sequence

import numpy as np

from .. import core
from .diagram import OVER, UNDER, Crossing, Diagram

EPS_GP = 1e-9


class DegenerateProjection(ValueError):
    """The projection is not regular.

    ``reason`` is one of ``"triple_point"``, ``"edge_collapse"``,
    ``"vertex_crossing"``, ``"depth_tie"`` or ``"overlap"``.
    """

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"degenerate projection ({reason}){': ' + detail if detail else ''}")
        self.reason = reason


class NoValidDirection(RuntimeError):
    pass


def normalize(d) -> np.ndarray:
    d = np.asarray(d, dtype=np.float64)
    n = np.linalg.norm(d)
    if not np.isfinite(n) or n == 0:
        raise ValueError("direction must be a non-zero finite vector")
    return d / n


def frame(d) -> tuple:
    """Orthonormal ``(e1, e2)`` spanning the plane normal to ``d``, with ``e1 x e2 = d``."""
    d = normalize(d)
    ref = np.array([1.0, 0.0, 0.0]) if abs(d[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(d, ref)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(d, e1)
    return e1, e2


def fibonacci_directions(samples: int) -> np.ndarray:
    """``samples`` near-uniform unit vectors on the sphere, in a fixed order."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    k = np.arange(samples, dtype=np.float64)
    zc = 1.0 - (2.0 * k + 1.0) / samples
    r = np.sqrt(np.maximum(0.0, 1.0 - zc * zc))
    phi = k * math.pi * (3.0 - math.sqrt(5.0))
    dirs = np.stack([r * np.cos(phi), r * np.sin(phi), zc], axis=1)
    return dirs / np.linalg.norm(dirs, axis=1)[:, None]


def _as_vertices(curve) -> np.ndarray:
    if getattr(curve, "degenerate", False):
        raise ValueError("degenerate curve has no projection; its invariant is the unknot")
    return np.asarray(getattr(curve, "vertices", curve), dtype=np.float64)


def project(curve, d, eps: float = EPS_GP) -> Diagram:
    """Regular projection of the closed polygon ``vertices`` along ``d``.

    The viewer sits at ``+d``: at each crossing the strand with the larger
    ``p . d`` is over.  Signs follow the right-hand rule: positive when the
    over strand turns counterclockwise onto the under strand as seen by the
    viewer.
    """
    pts = _as_vertices(curve)
    n = len(pts)
    if n < 3:
        raise ValueError("a closed polygon needs at least 3 vertices")
    d = normalize(d)
    e1, e2 = frame(d)
    xy = np.stack([pts @ e1, pts @ e2], axis=1)
    depth = pts @ d

    span = xy.max(axis=0) - xy.min(axis=0)
    diam = float(np.hypot(*span))
    if diam == 0:
        raise DegenerateProjection("edge_collapse", "curve projects to a point")
    tol = eps * diam

    r = np.roll(xy, -1, axis=0) - xy
    lengths = np.hypot(r[:, 0], r[:, 1])
    short = np.flatnonzero(lengths <= tol)
    if len(short):
        raise DegenerateProjection("edge_collapse", f"edge {int(short[0])} is normal to the plane")

    # consecutive edges folding back onto each other overlap in the plane
    rn = np.roll(r, -1, axis=0)
    cross_adj = r[:, 0] * rn[:, 1] - r[:, 1] * rn[:, 0]
    dot_adj = np.einsum("ij,ij->i", r, rn)
    fold = (np.abs(cross_adj) <= tol * lengths) & (dot_adj < 0)
    if np.any(fold):
        raise DegenerateProjection("overlap", f"edges {int(np.flatnonzero(fold)[0])} fold back")

    ii, jj, ss, tt, flags = core.segment_intersections(xy, tol)
    if len(flags) and np.any(flags == core.PARALLEL_OVERLAP):
        raise DegenerateProjection("overlap", "collinear edges overlap")
    if len(flags) and np.any(flags == core.NEAR_ENDPOINT):
        k = int(np.flatnonzero(flags == core.NEAR_ENDPOINT)[0])
        raise DegenerateProjection("vertex_crossing", f"edges {int(ii[k])},{int(jj[k])} meet at a vertex")

    crossings: List[Crossing] = []
    points = []
    for i, j, s, t in zip(ii.tolist(), jj.tolist(), ss.tolist(), tt.tolist()):
        zi = depth[i] + s * (depth[(i + 1) % n] - depth[i])
        zj = depth[j] + t * (depth[(j + 1) % n] - depth[j])
        if abs(zi - zj) <= tol:
            raise DegenerateProjection("depth_tie", f"edges {i},{j} cannot be ordered")
        if zi > zj:
            over, under, t_over, s_under = i, j, s, t
        else:
            over, under, t_over, s_under = j, i, t, s
        o, u = r[over], r[under]
        sign = 1 if o[0] * u[1] - o[1] * u[0] > 0 else -1
        crossings.append(Crossing(under, over, s_under, t_over, sign))
        points.append(xy[i] + s * r[i])

    if len(points) > 1:
        P = np.array(points)
        diff = P[:, None, :] - P[None, :, :]
        close = np.hypot(diff[..., 0], diff[..., 1]) <= tol
        np.fill_diagonal(close, False)
        if np.any(close):
            raise DegenerateProjection("triple_point", "three or more strands meet")

    visits = [[] for _ in range(n)]
    for c, x in enumerate(crossings):
        visits[x.under_edge].append((x.s, c, UNDER))
        visits[x.over_edge].append((x.t, c, OVER))
    seq = []
    for edge in visits:
        edge.sort()
        seq.extend((c, kind) for _, c, kind in edge)
    return Diagram(
        components=(tuple(seq),),
        signs=tuple(x.sign for x in crossings),
        crossings=tuple(crossings),
        n_edges=n,
        direction=tuple(float(v) for v in d),
    )


class RankedDirection(NamedTuple):
    n_crossings: int
    index: int
    direction: np.ndarray
    diagram: Diagram


def rank_directions(curve, samples: int, eps: float = EPS_GP) -> List[RankedDirection]:
    """Regular projections among the Fibonacci samples, fewest crossings first.

    Ties keep sample order.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    vertices = _as_vertices(curve)
    ranked = []
    for idx, d in enumerate(fibonacci_directions(samples)):
        try:
            diag = project(vertices, d, eps)
        except DegenerateProjection:
            continue
        ranked.append(RankedDirection(diag.n_crossings, idx, d, diag))
    ranked.sort(key=lambda r: (r.n_crossings, r.index))
    return ranked


def choose_direction(curve, samples: int, eps: float = EPS_GP) -> np.ndarray:
    """Sampled direction whose regular projection has the fewest crossings."""
    ranked = rank_directions(curve, samples, eps)
    if not ranked:
        raise NoValidDirection(f"all {samples} sampled directions are degenerate")
    return ranked[0].direction


def valid_directions(curve, candidates: Sequence, eps: float = EPS_GP) -> List[np.ndarray]:
    vertices = _as_vertices(curve)
    out = []
    for d in candidates:
        try:
            project(vertices, d, eps)
        except DegenerateProjection:
            continue
        out.append(normalize(d))
    return out
