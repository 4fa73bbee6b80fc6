"""Grayscale PNG ingestion, pseudo-colouring and channel planes."""

from __future__ import annotations

import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
from PIL import Image

PathLike = Union[str, Path]


class UnsupportedFormat(ValueError):
    pass


class ChannelMismatch(ValueError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit grayscale image; ``pixels`` has shape ``(height, width)``."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("pixels must be a non-empty 2D array")
        if p.dtype != np.uint8:
            if np.any((p < 0) | (p > 255)) or np.any(p != np.round(p)):
                raise ValueError("gray values must be integers in [0, 255]")
            p = p.astype(np.uint8)
        object.__setattr__(self, "pixels", _frozen(np.array(p)))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        return isinstance(other, GrayImage) and np.array_equal(self.pixels, other.pixels)

    def center_crop(self) -> "GrayImage":
        """Largest centred square."""
        h, w = self.pixels.shape
        s = min(h, w)
        y0, x0 = (h - s) // 2, (w - s) // 2
        return GrayImage(self.pixels[y0:y0 + s, x0:x0 + s])

    def resized(self, side: int) -> "GrayImage":
        """Square resize with bilinear resampling (no-op when already ``side``)."""
        if self.pixels.shape == (side, side):
            return self
        img = Image.fromarray(np.ascontiguousarray(self.pixels), mode="L")
        return GrayImage(np.asarray(img.resize((side, side), Image.BILINEAR)))


@dataclass(frozen=True, eq=False)
class ChannelPlane:
    """A 2D grid of real intensities; ``values`` has shape ``(height, width)``."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError("plane values must be 2D")
        if not np.all(np.isfinite(v)):
            raise ValueError("plane values must be finite")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other):
        return isinstance(other, ChannelPlane) and np.array_equal(self.values, other.values)


@dataclass(frozen=True, eq=False)
class RgbImage:
    red: ChannelPlane
    green: ChannelPlane
    blue: ChannelPlane

    def __post_init__(self):
        shapes = {self.red.values.shape, self.green.values.shape, self.blue.values.shape}
        if len(shapes) != 1:
            raise ValueError("RGB planes must share dimensions")

    @property
    def width(self) -> int:
        return self.red.width

    @property
    def height(self) -> int:
        return self.red.height

    def as_array(self) -> np.ndarray:
        return np.stack([self.red.values, self.green.values, self.blue.values], axis=-1)

    def __eq__(self, other):
        return isinstance(other, RgbImage) and np.array_equal(self.as_array(), other.as_array())


@dataclass(frozen=True, eq=False)
class ColorLut:
    """256 RGB entries with components in [0, 1]."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=np.float64)
        if e.shape != (256, 3):
            raise ValueError(f"LUT must have 256 RGB entries, got shape {e.shape}")
        if np.any(e < 0) or np.any(e > 1):
            raise ValueError("LUT components must lie in [0, 1]")
        object.__setattr__(self, "entries", _frozen(e))

    @classmethod
    def identity(cls) -> "ColorLut":
        g = np.arange(256) / 255.0
        return cls(np.stack([g, g, g], axis=1))


def load_lut(path: Optional[PathLike] = None) -> ColorLut:
    """Read a LUT file of 256 ``index r g b`` lines (default: nipy_spectral)."""
    if path is None:
        text = resources.files("knotimage").joinpath("data/nipy_spectral.lut").read_text()
    else:
        text = Path(path).read_text()
    rows = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"LUT line {lineno}: expected 'index r g b'")
        rows[int(parts[0])] = [float(x) for x in parts[1:]]
    if sorted(rows) != list(range(256)):
        raise ValueError("LUT must define indices 0..255 exactly once")
    return ColorLut(np.array([rows[i] for i in range(256)]))


_default_lut: Optional[ColorLut] = None


def default_lut() -> ColorLut:
    global _default_lut
    if _default_lut is None:
        _default_lut = load_lut()
    return _default_lut


def load_gray(path: PathLike) -> GrayImage:
    """Load an 8-bit PNG as grayscale.

    RGB(A) inputs must have identical R, G and B channels; the red channel
    is kept.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))
    try:
        img = Image.open(path)
        img.load()
    except Exception as exc:
        raise UnsupportedFormat(f"{path}: not a readable image ({exc})") from exc
    if img.format != "PNG":
        raise UnsupportedFormat(f"{path}: expected PNG, got {img.format}")
    mode = img.mode
    if mode == "P":
        img = img.convert("RGB")
        mode = "RGB"
    if mode == "L":
        return GrayImage(np.asarray(img, dtype=np.uint8))
    if mode in ("RGB", "RGBA"):
        arr = np.asarray(img, dtype=np.uint8)
        r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]
        if not (np.array_equal(r, g) and np.array_equal(r, b)):
            raise ChannelMismatch(f"{path}: RGB channels differ; expected a grayscale export")
        return GrayImage(r)
    raise UnsupportedFormat(f"{path}: PNG mode {mode!r} is not 8-bit gray or RGB")


def save_gray(img: GrayImage, path: PathLike) -> None:
    Image.fromarray(np.ascontiguousarray(img.pixels), mode="L").save(path, format="PNG")


def png_bytes(img: Union[GrayImage, RgbImage]) -> bytes:
    """PNG encoding; RGB components in [0, 1] are scaled to 8 bits."""
    if isinstance(img, GrayImage):
        pil = Image.fromarray(np.ascontiguousarray(img.pixels), mode="L")
    else:
        arr = np.clip(np.round(img.as_array() * 255.0), 0, 255).astype(np.uint8)
        pil = Image.fromarray(arr, mode="RGB")
    buf = io.BytesIO()
    pil.save(buf, format="PNG")
    return buf.getvalue()


def apply_colormap(img: GrayImage, lut: ColorLut) -> RgbImage:
    rgb = lut.entries[img.pixels]
    return RgbImage(ChannelPlane(rgb[..., 0]), ChannelPlane(rgb[..., 1]), ChannelPlane(rgb[..., 2]))


def split_channels(img: RgbImage) -> Tuple[ChannelPlane, ChannelPlane, ChannelPlane]:
    return img.red, img.green, img.blue


def merge_channels(red: ChannelPlane, green: ChannelPlane, blue: ChannelPlane) -> RgbImage:
    return RgbImage(red, green, blue)
