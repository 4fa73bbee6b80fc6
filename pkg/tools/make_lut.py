"""Regenerate src/knotimage/data/nipy_spectral.lut from matplotlib (run once)."""

from pathlib import Path

import matplotlib

OUT = Path(__file__).resolve().parents[1] / "src" / "knotimage" / "data" / "nipy_spectral.lut"


def main():
    cmap = matplotlib.colormaps["nipy_spectral"].resampled(256)
    lines = ["# nipy_spectral sampled at 256 levels: index r g b"]
    for i in range(256):
        r, g, b, _ = cmap(i)
        lines.append(f"{i} {r:.6f} {g:.6f} {b:.6f}")
    OUT.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
