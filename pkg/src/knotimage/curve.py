"""Closed piecewise-linear curves in RGB space."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

EPS_MERGE = 1e-9
JITTER = 1e-6


class EmptyInput(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ClosedPolyline:
    """Ordered vertices of an implicitly closed polygon.

    ``degenerate`` curves (fewer than three distinct consecutive vertices)
    are treated as the unknot downstream.
    """

    image_id: str
    vertices: np.ndarray
    jitter_seed: int
    degenerate: bool

    def __post_init__(self):
        v = np.array(self.vertices, dtype=np.float64).reshape(-1, 3)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, ClosedPolyline):
            return NotImplemented
        return (
            self.image_id == other.image_id
            and self.jitter_seed == other.jitter_seed
            and self.degenerate == other.degenerate
            and np.array_equal(self.vertices, other.vertices)
        )

    def transformed(self, matrix=None, offset=None, scale: float = 1.0) -> "ClosedPolyline":
        """Copy with ``scale * v @ matrix.T + offset`` applied to every vertex."""
        v = self.vertices * scale
        if matrix is not None:
            v = v @ np.asarray(matrix, dtype=np.float64).T
        if offset is not None:
            v = v + np.asarray(offset, dtype=np.float64)
        return ClosedPolyline(self.image_id, v, self.jitter_seed, self.degenerate)

    def reversed(self) -> "ClosedPolyline":
        return ClosedPolyline(self.image_id, self.vertices[::-1], self.jitter_seed, self.degenerate)


def stable_seed(image_id: str) -> int:
    """Process-independent 63-bit seed derived from ``image_id``."""
    digest = hashlib.sha256(image_id.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def _merge_consecutive(points: np.ndarray, eps: float) -> np.ndarray:
    kept = [points[0]]
    for p in points[1:]:
        if np.linalg.norm(p - kept[-1]) > eps:
            kept.append(p)
    while len(kept) > 1 and np.linalg.norm(kept[-1] - kept[0]) <= eps:
        kept.pop()
    return np.array(kept)


def _repeat_indices(points: np.ndarray) -> list:
    """Indices of vertices that exactly repeat an earlier vertex."""
    seen = {}
    out = []
    for i, p in enumerate(map(tuple, points)):
        if p in seen:
            out.append(i)
        else:
            seen[p] = i
    return out


def build_curve(points, image_id: str = "", seed: Optional[int] = None) -> ClosedPolyline:
    """Join ``points`` in order into a closed polyline.

    ``points`` may be a sequence of 3-vectors or a coordinate set exposing
    ``points`` and ``image_id``.  Consecutive (cyclic) duplicates within
    1e-9 are merged; exact repeats of non-adjacent vertices are separated by
    a seeded offset of at most 1e-6 per axis.  The seed defaults to a
    stable hash of ``image_id``.
    """
    if hasattr(points, "points"):
        image_id = points.image_id
        points = points.points
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    if len(pts) == 0:
        raise EmptyInput("cannot build a curve from zero points")
    if seed is None:
        seed = stable_seed(image_id)
    pts = _merge_consecutive(pts, EPS_MERGE)
    if len(pts) < 3:
        return ClosedPolyline(image_id, pts, seed, True)

    rng = np.random.default_rng(seed)
    pts = pts.copy()
    repeats = _repeat_indices(pts)
    while repeats:
        pts[repeats] += rng.uniform(-JITTER, JITTER, size=(len(repeats), 3))
        repeats = _repeat_indices(pts)
    return ClosedPolyline(image_id, pts, seed, False)
