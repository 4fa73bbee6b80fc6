"""Convolution/softmax-pooling reduction of images to RGB coordinates."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from . import core
from .imageio import ChannelPlane, GrayImage, RgbImage, apply_colormap, ColorLut
from .kernelbank import Kernel, KernelBank


class PlaneTooSmall(ValueError):
    pass


class TargetTooLarge(ValueError):
    pass


class InfeasibleSchedule(ValueError):
    pass


@dataclass(frozen=True)
class PoolSchedule:
    """Pool output sides ``t_1 > ... > t_N = 2``, one per convolution cycle."""

    targets: Tuple[int, ...]

    def __post_init__(self):
        t = tuple(int(x) for x in self.targets)
        object.__setattr__(self, "targets", t)
        if not t:
            raise InfeasibleSchedule("schedule needs at least one cycle")
        if t[-1] != 2:
            raise InfeasibleSchedule(f"last target must be 2, got {t[-1]}")
        if any(a <= b for a, b in zip(t, t[1:])):
            raise InfeasibleSchedule(f"targets must strictly decrease: {list(t)}")

    @property
    def cycles(self) -> int:
        return len(self.targets)

    def sizes(self, s0: int) -> List[Tuple[int, int]]:
        """``(after convolution, after pooling)`` side for every cycle."""
        out = []
        side = s0
        for t in self.targets:
            out.append((side - 2, t))
            side = t
        return out

    def check(self, s0: int) -> None:
        side = s0
        for k, t in enumerate(self.targets):
            if side < 3:
                raise InfeasibleSchedule(f"cycle {k + 1}: side {side} too small to convolve")
            if side - 2 < t:
                raise InfeasibleSchedule(f"cycle {k + 1}: cannot pool {side - 2} to {t}")
            side = t


@dataclass(frozen=True)
class CoordinateSet:
    image_id: str
    points: np.ndarray  # (4 * n_kernels, 3)
    provenance: Tuple[Tuple[str, int], ...]

    @property
    def kernel_names(self) -> List[str]:
        names = []
        for name, _ in self.provenance:
            if not names or names[-1] != name:
                names.append(name)
        return names

    def subset(self, names: Iterable[str]) -> "CoordinateSet":
        wanted = set(names)
        idx = [i for i, (n, _) in enumerate(self.provenance) if n in wanted]
        return CoordinateSet(
            self.image_id, self.points[idx], tuple(self.provenance[i] for i in idx)
        )


def convolve3x3(plane: ChannelPlane, k: Kernel) -> ChannelPlane:
    """Valid 3x3 correlation, stride 1."""
    v = plane.values
    if v.shape[0] < 3 or v.shape[1] < 3:
        raise PlaneTooSmall(f"plane {v.shape[1]}x{v.shape[0]} is smaller than 3x3")
    matrix = k.matrix if isinstance(k, Kernel) else np.asarray(k, dtype=np.float64)
    return ChannelPlane(core.convolve3x3(v, matrix))


def softmax_pool(plane: ChannelPlane, target: int, tau: float = 1.0) -> ChannelPlane:
    """Softmax-weighted average over a balanced ``target x target`` window grid."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    v = plane.values
    if target < 2 or target > min(v.shape):
        raise TargetTooLarge(f"cannot pool {v.shape[1]}x{v.shape[0]} to {target}x{target}")
    return ChannelPlane(core.softmax_pool(v, int(target), float(tau)))


def make_schedule(s0: int, cycles: int) -> PoolSchedule:
    """Geometric interpolation of pool sides from ``s0`` down to 2."""
    if cycles < 1:
        raise InfeasibleSchedule("cycles must be >= 1")
    ls0, l2 = math.log(s0), math.log(2)
    targets = [
        int(round(math.exp(((cycles - k) * ls0 + k * l2) / cycles))) for k in range(1, cycles + 1)
    ]
    targets[-1] = 2
    try:
        sched = PoolSchedule(tuple(targets))
    except InfeasibleSchedule as exc:
        raise InfeasibleSchedule(f"s0={s0}, cycles={cycles}: {exc}") from None
    sched.check(s0)
    return sched


def _square(values: np.ndarray) -> np.ndarray:
    h, w = values.shape
    s = min(h, w)
    y0, x0 = (h - s) // 2, (w - s) // 2
    return values[y0:y0 + s, x0:x0 + s]


def reduce_channel(plane: ChannelPlane, k: Kernel, schedule: PoolSchedule, tau: float = 1.0) -> List[float]:
    """Alternate convolution and pooling until 2x2; row-major values."""
    v = plane.values
    if v.shape[0] != v.shape[1]:
        plane = ChannelPlane(_square(v))
    schedule.check(plane.width)
    for t in schedule.targets:
        plane = softmax_pool(convolve3x3(plane, k), t, tau)
    return [float(x) for x in plane.values.ravel()]


def extract_coordinates(
    img: RgbImage, bank: KernelBank, schedule: PoolSchedule, tau: float = 1.0, image_id: str = ""
) -> CoordinateSet:
    """Four ``(R, G, B)`` points per kernel, in bank order."""
    planes = (img.red, img.green, img.blue)
    points = []
    prov = []
    for k in bank.kernels:
        per_channel = [reduce_channel(p, k, schedule, tau) for p in planes]
        for j in range(4):
            points.append((per_channel[0][j], per_channel[1][j], per_channel[2][j]))
            prov.append((k.name, j))
    return CoordinateSet(image_id, np.array(points, dtype=np.float64).reshape(-1, 3), tuple(prov))


def featurize_gray(
    gray: GrayImage,
    lut: ColorLut,
    bank: KernelBank,
    cycles: int,
    tau: float = 1.0,
    side: int | None = None,
    image_id: str = "",
) -> Tuple[CoordinateSet, PoolSchedule]:
    """Crop to a centred square, optionally resize, colour-map and reduce."""
    gray = gray.center_crop()
    if side is not None:
        gray = gray.resized(side)
    schedule = make_schedule(gray.width, cycles)
    coords = extract_coordinates(apply_colormap(gray, lut), bank, schedule, tau, image_id)
    return coords, schedule


# -- coordinate file (JSON lines) -------------------------------------------

def coordinate_record(coords: CoordinateSet, schedule: PoolSchedule, tau: float) -> dict:
    return {
        "image_id": coords.image_id,
        "kernels": coords.kernel_names,
        "points": [[float(x) for x in p] for p in coords.points],
        "schedule": list(schedule.targets),
        "tau": float(tau),
    }


def record_to_coordinates(rec: dict) -> CoordinateSet:
    kernels = rec["kernels"]
    points = np.array(rec["points"], dtype=np.float64).reshape(-1, 3)
    if len(points) != 4 * len(kernels):
        raise ValueError(f"record {rec.get('image_id')!r}: {len(points)} points for {len(kernels)} kernels")
    prov = tuple((name, j) for name in kernels for j in range(4))
    return CoordinateSet(rec["image_id"], points, prov)


def dump_records(records: Sequence[dict]) -> str:
    # repr-exact floats keep the round trip lossless
    return "".join(json.dumps(r, separators=(", ", ": ")) + "\n" for r in records)


def read_records(path) -> List[dict]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if line.strip():
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return out
