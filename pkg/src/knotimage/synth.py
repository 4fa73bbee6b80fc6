"""Synthetic two-class corpus mimicking unfolded rib images.

Each image shows quasi-parallel bright ridges on a dark background.  The
``fracture`` image with index ``i`` is the ``no_fracture`` image ``i`` with
every ridge cut by a dark gap.  Both classes draw from the same random
stream per index, so a gap width of zero makes the classes pixel-identical.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

import numpy as np

from .imageio import GrayImage, save_gray

LABELS = ("fracture", "no_fracture")


@dataclass(frozen=True)
class SynthParams:
    count: int = 10  # images per class
    side: int = 96
    ridges: int = 6
    gap_min: float = 4.0
    gap_max: float = 8.0
    noise: float = 6.0
    seed: int = 0

    def __post_init__(self):
        if self.count < 1 or self.ridges < 1:
            raise ValueError("count and ridges must be >= 1")
        if self.side < 8:
            raise ValueError("side must be >= 8")
        if not 0 <= self.gap_min <= self.gap_max:
            raise ValueError("need 0 <= gap_min <= gap_max")
        if self.noise < 0:
            raise ValueError("noise must be >= 0")


def render_pair(p: SynthParams, index: int) -> Tuple[GrayImage, GrayImage]:
    """``(no_fracture, fracture)`` images for one index."""
    rng = np.random.default_rng([p.seed, index])
    s = p.side
    yy, xx = np.mgrid[0:s, 0:s].astype(np.float64)
    spacing = s / (p.ridges + 1)
    intact = np.zeros((s, s))
    broken = np.zeros((s, s))
    for r in range(p.ridges):
        y0 = spacing * (r + 1) + rng.uniform(-0.15, 0.15) * spacing
        amp = rng.uniform(0.05, 0.2) * spacing
        wavelength = rng.uniform(0.8, 1.6) * s
        phase = rng.uniform(0, 2 * np.pi)
        width = rng.uniform(0.08, 0.14) * spacing
        bright = rng.uniform(150, 220)
        gap_x = rng.uniform(0.2, 0.8) * s
        gap_w = rng.uniform(p.gap_min, p.gap_max)
        centre = y0 + amp * np.sin(2 * np.pi * xx / wavelength + phase)
        ridge = bright * np.exp(-0.5 * ((yy - centre) / width) ** 2)
        intact += ridge
        mask = np.abs(xx - gap_x) < gap_w / 2
        broken += np.where(mask, 0.0, ridge)
    background = 20.0
    noise = rng.normal(0.0, p.noise, size=(s, s)) if p.noise > 0 else np.zeros((s, s))

    def finish(a):
        return GrayImage(np.clip(np.round(background + a + noise), 0, 255).astype(np.uint8))

    return finish(intact), finish(broken)


def synth_dataset(p: SynthParams, outdir) -> List[Tuple[str, str]]:
    """Write the corpus and ``manifest.csv``; returns ``(filename, label)`` rows."""
    outdir = Path(outdir)
    for label in LABELS:
        (outdir / label).mkdir(parents=True, exist_ok=True)
    rows = []
    for i in range(p.count):
        intact, broken = render_pair(p, i)
        for label, img in (("fracture", broken), ("no_fracture", intact)):
            name = f"{label}/img_{i:04d}.png"
            save_gray(img, outdir / name)
            rows.append((name, label))
    rows.sort()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["filename", "label"])
    w.writerows(rows)
    (outdir / "manifest.csv").write_text(buf.getvalue())
    return rows


def read_manifest(path) -> List[Tuple[str, str]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [(row["filename"], row["label"]) for row in reader]
