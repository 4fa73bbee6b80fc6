"""Derive the ``default13`` kernel preset and write it into ``kernels.txt``.

The preset is the greedy crossing-minimising 13-subset of the full bank on a
fixed synthetic corpus (8 images per class, seed 7, side 96, 4 cycles,
tau 1, 64 projection directions).

Usage: python3 tools/make_default_preset.py [--dry-run]
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

from knotimage.featurize import featurize_gray
from knotimage.imageio import default_lut
from knotimage.kernelbank import DEFAULT_PRESET, default_bank
from knotimage.selection import mean_crossings, select_kernels
from knotimage.synth import SynthParams, render_pair

ASSET = Path(__file__).resolve().parents[1] / "src/knotimage/data/kernels.txt"
PARAMS = SynthParams(count=8, side=96, seed=7)
CYCLES = 4
TARGET = 13


def corpus():
    bank = default_bank()
    lut = default_lut()
    out = []
    for i in range(PARAMS.count):
        for label, img in zip(("no_fracture", "fracture"), render_pair(PARAMS, i)):
            cs, _ = featurize_gray(img, lut, bank, CYCLES, image_id=f"{label}/img_{i:04d}.png")
            out.append(cs)
    return bank, out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    t0 = time.time()
    bank, cs = corpus()
    chosen = select_kernels(cs, bank, TARGET)
    names = chosen.names
    print("selected:", " ".join(names))
    print(f"mean crossings {mean_crossings(cs, names):.3f}; {time.time() - t0:.1f} s")
    if "--dry-run" in argv:
        return
    line = f"preset {DEFAULT_PRESET} " + " ".join(names)
    text = ASSET.read_text()
    kept = [ln for ln in text.splitlines() if not ln.startswith(f"preset {DEFAULT_PRESET} ")]
    while kept and not kept[-1].strip():
        kept.pop()
    ASSET.write_text("\n".join(kept) + "\n\n" + line + "\n")
    print(f"updated {ASSET}")


if __name__ == "__main__":
    main()
