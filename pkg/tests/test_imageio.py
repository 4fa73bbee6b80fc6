import numpy as np
import pytest
from PIL import Image

from knotimage.imageio import (
    ChannelMismatch,
    ColorLut,
    GrayImage,
    UnsupportedFormat,
    apply_colormap,
    default_lut,
    load_gray,
    load_lut,
    merge_channels,
    png_bytes,
    save_gray,
    split_channels,
)


def gradient(h=6, w=9):
    return GrayImage((np.arange(h * w).reshape(h, w) * 3 % 256).astype(np.uint8))


def test_gray_round_trip(tmp_path):
    img = gradient()
    save_gray(img, tmp_path / "g.png")
    assert load_gray(tmp_path / "g.png") == img


def test_rgb_with_equal_channels_accepted(tmp_path):
    g = gradient().pixels
    Image.fromarray(np.stack([g, g, g], axis=-1), mode="RGB").save(tmp_path / "rgb.png")
    assert load_gray(tmp_path / "rgb.png") == GrayImage(g)


def test_rgb_with_distinct_channels_rejected(tmp_path):
    g = gradient().pixels
    arr = np.stack([g, g, 255 - g], axis=-1)
    Image.fromarray(arr, mode="RGB").save(tmp_path / "rgb.png")
    with pytest.raises(ChannelMismatch):
        load_gray(tmp_path / "rgb.png")


def test_non_png_rejected(tmp_path):
    Image.fromarray(gradient().pixels, mode="L").save(tmp_path / "g.bmp")
    with pytest.raises(UnsupportedFormat):
        load_gray(tmp_path / "g.bmp")
    (tmp_path / "junk.png").write_bytes(b"not an image")
    with pytest.raises(UnsupportedFormat):
        load_gray(tmp_path / "junk.png")


def test_sixteen_bit_rejected(tmp_path):
    Image.fromarray(np.full((4, 4), 40000, dtype=np.uint16)).save(tmp_path / "deep.png")
    with pytest.raises(UnsupportedFormat):
        load_gray(tmp_path / "deep.png")


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_gray(tmp_path / "nope.png")


def test_center_crop_and_resize():
    img = gradient(6, 10)
    sq = img.center_crop()
    assert (sq.height, sq.width) == (6, 6)
    np.testing.assert_array_equal(sq.pixels, img.pixels[:, 2:8])
    assert img.center_crop().resized(4).pixels.shape == (4, 4)
    const = GrayImage(np.full((8, 8), 77, dtype=np.uint8))
    assert np.all(const.resized(5).pixels == 77)


def test_default_lut_shape_and_ends():
    lut = default_lut()
    assert lut.entries.shape == (256, 3)
    np.testing.assert_allclose(lut.entries[0], [0, 0, 0])
    np.testing.assert_allclose(lut.entries[255], [0.8, 0.8, 0.8])
    assert np.all((lut.entries >= 0) & (lut.entries <= 1))


def test_default_lut_matches_matplotlib():
    mpl = pytest.importorskip("matplotlib")
    ref = mpl.colormaps["nipy_spectral"].resampled(256)(np.arange(256))[:, :3]
    np.testing.assert_allclose(default_lut().entries, ref, atol=5e-7)


def test_lut_file_validation(tmp_path):
    (tmp_path / "short.lut").write_text("0 0 0 0\n")
    with pytest.raises(ValueError):
        load_lut(tmp_path / "short.lut")
    with pytest.raises(ValueError):
        ColorLut(np.full((256, 3), 2.0))


def test_colormap_and_channels():
    img = gradient()
    rgb = apply_colormap(img, ColorLut.identity())
    r, g, b = split_channels(rgb)
    np.testing.assert_allclose(r.values, img.pixels / 255.0)
    assert merge_channels(r, g, b) == rgb
    lut = default_lut()
    rgb = apply_colormap(img, lut)
    np.testing.assert_array_equal(rgb.as_array(), lut.entries[img.pixels])


def test_png_bytes_decodes(tmp_path):
    rgb = apply_colormap(gradient(), ColorLut.identity())
    (tmp_path / "c.png").write_bytes(png_bytes(rgb))
    back = np.asarray(Image.open(tmp_path / "c.png"))
    np.testing.assert_array_equal(back[..., 0], gradient().pixels)
