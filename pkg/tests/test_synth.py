import numpy as np

from knotimage.imageio import load_gray
from knotimage.synth import LABELS, SynthParams, read_manifest, render_pair, synth_dataset


def test_dataset_layout(tmp_path):
    rows = synth_dataset(SynthParams(count=5, side=32), tmp_path)
    assert len(rows) == 10
    assert read_manifest(tmp_path / "manifest.csv") == rows
    for name, label in rows:
        assert name.startswith(label + "/")
        assert (tmp_path / name).is_file()
    assert {lab for _, lab in rows} == set(LABELS)


def test_byte_identical_reruns(tmp_path):
    p = SynthParams(count=3, side=32, seed=9)
    synth_dataset(p, tmp_path / "a")
    synth_dataset(p, tmp_path / "b")
    for f in sorted((tmp_path / "a").rglob("*.*")):
        assert f.read_bytes() == (tmp_path / "b" / f.relative_to(tmp_path / "a")).read_bytes()


def test_zero_gap_gives_identical_classes():
    p = SynthParams(count=4, side=40, gap_min=0, gap_max=0)
    for i in range(p.count):
        intact, broken = render_pair(p, i)
        assert intact == broken


def test_gap_darkens_pixels():
    intact, broken = render_pair(SynthParams(side=64, gap_min=6, gap_max=6, noise=0), 0)
    assert np.all(broken.pixels <= intact.pixels)
    assert np.any(broken.pixels < intact.pixels)


def test_images_are_gray_png(tmp_path):
    rows = synth_dataset(SynthParams(count=1, side=24), tmp_path)
    img = load_gray(tmp_path / rows[0][0])
    assert img.pixels.shape == (24, 24)
