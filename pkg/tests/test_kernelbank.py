import numpy as np
import pytest

from knotimage.kernelbank import (
    CATEGORIES,
    DEFAULT_PRESET,
    DuplicateName,
    ParseError,
    UnknownKernel,
    asset_checksum,
    default_asset_text,
    default_bank,
    format_bank,
    parse_bank,
    select,
)


def test_bank_size_and_categories():
    bank = default_bank()
    assert len(bank) == 28
    counts = bank.counts()
    assert counts["sobel"] == 4
    assert sum(counts.values()) == 28
    assert set(counts) == set(CATEGORIES)
    assert all(v > 0 for v in counts.values())


def test_names_unique_and_matrices_finite():
    bank = default_bank()
    assert len(set(bank.names)) == len(bank)
    for k in bank:
        assert k.matrix.shape == (3, 3)
        assert np.all(np.isfinite(k.matrix))
        assert not k.matrix.flags.writeable


def test_fractions_parse_exactly():
    box = default_bank()["box_blur"].matrix
    np.testing.assert_array_equal(box, np.full((3, 3), 1 / 9))


def test_default_preset_has_13_in_bank_order():
    bank = default_bank()
    sub = bank.preset(DEFAULT_PRESET)
    assert len(sub) == 13
    order = [bank.names.index(n) for n in sub.names]
    assert order == sorted(order)


def test_select_preserves_bank_order_and_rejects_unknown():
    bank = default_bank()
    sub = select(bank, ["sobel_x", "box_blur"])
    assert sub.names == ["box_blur", "sobel_x"]
    with pytest.raises(UnknownKernel):
        select(bank, ["nonexistent"])
    with pytest.raises(UnknownKernel):
        bank.preset("nope")


def test_format_round_trip():
    bank = default_bank()
    again = parse_bank(format_bank(bank))
    assert again == bank
    assert again.presets == bank.presets


def test_checksum_stable():
    text = default_asset_text()
    assert asset_checksum() == asset_checksum(text)
    assert asset_checksum(text + " ") != asset_checksum(text)


@pytest.mark.parametrize(
    "text, exc",
    [
        ("a blur\n1 2 3\n1 2 3\n", ParseError),
        ("a blur\n1 2\n1 2 3\n1 2 3\n", ParseError),
        ("a nonsense\n1 2 3\n1 2 3\n1 2 3\n", ParseError),
        ("a blur\n1 2 x\n1 2 3\n1 2 3\n", ParseError),
        ("a blur\n1 2 3\n1 2 3\n1 2 3\na blur\n1 2 3\n1 2 3\n1 2 3\n", DuplicateName),
        ("a blur\n1 2 3\n1 2 3\n1 2 3\npreset p a b\n", UnknownKernel),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_bank(text)


def test_parse_error_reports_line():
    with pytest.raises(ParseError) as info:
        parse_bank("# c\na blur\n1 2 3\n1 2\n")
    assert info.value.lineno == 4
