import pytest

from knotimage.knot import Diagram, DiagramError, homfly

TREFOIL_PD = [(1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)]
FIGURE8_PD = [(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)]


def test_pd_signs():
    assert Diagram.from_pd(TREFOIL_PD).signs == (-1, -1, -1)
    assert Diagram.from_pd(FIGURE8_PD).writhe == 0


@pytest.mark.parametrize("pd", [TREFOIL_PD, FIGURE8_PD])
def test_pd_round_trip(pd):
    d = Diagram.from_pd(pd)
    again = Diagram.from_pd(d.to_pd())
    assert again.signs == d.signs
    assert homfly(again) == homfly(d)


def test_gauss_code_round_trip():
    d = Diagram.from_gauss([[1, -2, 3, -1, 2, -3]], [1, 1, 1])
    assert d.gauss_code() == [[1, -2, 3, -1, 2, -3]]
    assert d.n_crossings == 3
    assert d.writhe == 3


def test_mirror_switches_everything():
    d = Diagram.from_gauss([[1, -2, 3, -1, 2, -3]], [1, 1, 1])
    m = d.mirror()
    assert m.signs == (-1, -1, -1)
    assert homfly(m) == homfly(d).mirror()


def test_validation():
    with pytest.raises(DiagramError):
        Diagram.from_gauss([[1, 2]], [1, 1])  # crossing 1 never passed under
    with pytest.raises(DiagramError):
        Diagram.from_gauss([[1, -1]], [0])
