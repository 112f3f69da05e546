import pytest

from khlab.complexes.khovanov import build_complex
from khlab.diagram.OrientedDiagram import InvalidDiagramException
from khlab.homology.homology import homology
from khlab.io.DiagramParser import load_diagram
from khlab.io.PDParser import parse_pd

diagrams = (
    "PD[X(1,4,2,3),X(3,2,4,1)]",
    "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]",
    "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]",
    "PD[X(1,1,2,2)]",
    "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]",
    "U U",
)

# (crossings, n+, n-, components) for each diagram defined above
shapes = {
    "PD[X(1,4,2,3),X(3,2,4,1)]": (2, None, None, 2),
    "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]": (3, 3, 0, 1),
    "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]": (3, 0, 3, 1),
    "PD[X(1,1,2,2)]": (1, None, None, 1),
    "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]": (4, 2, 2, 1),
    "U U": (0, 0, 0, 2),
}

invalid = (
    "PD[X(1,2,3,4)]",
    "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)",
    "PD[X(1,1,1,1)]",
    "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)] bp=9",
    "hello",
)


@pytest.mark.parametrize("pd", diagrams)
def test_shape(pd):
    d = parse_pd(pd)
    (n, n_plus, n_minus, components) = shapes[pd]
    assert d.n == n
    assert d.n_plus + d.n_minus == n
    if n_plus is not None:
        assert (d.n_plus, d.n_minus) == (n_plus, n_minus)
    assert d.number_of_components() == components


@pytest.mark.parametrize("pd", diagrams)
def test_serialize_reparses(pd):
    d = parse_pd(pd)
    again = parse_pd(d.to_pd())
    assert again.n == d.n
    assert again.writhe == d.writhe
    assert again.number_of_components() == d.number_of_components()


@pytest.mark.parametrize("text", invalid)
def test_invalid(text):
    with pytest.raises(InvalidDiagramException):
        load_diagram(text)


def test_mirror_swaps_signs():
    d = parse_pd("PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]")
    m = d.mirror()
    assert (m.n_plus, m.n_minus) == (d.n_minus, d.n_plus)
    assert m.writhe == -d.writhe


def test_example_names():
    assert load_diagram("trefoil").n == 3
    assert load_diagram("khlab.inputs.examples.diagrams.figure_eight").n == 4
    assert load_diagram("unknot").n == 0
    assert load_diagram("unlink2").number_of_components() == 2


def test_file(tmp_path):
    path = tmp_path / "trefoil.txt"
    path.write_text("# right trefoil\nPD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]\n")
    assert load_diagram(str(path)).n_plus == 3


def test_basepoint_token():
    d = parse_pd("PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)] bp=4")
    assert d.basepoint == 4
    assert d.with_basepoint(2).basepoint == 2


def test_crossing_orientations():
    d = load_diagram("trefoil_right")
    flipped = d.set_crossing_orientations([not a for a in d.arrows])
    assert flipped.arrows != d.arrows
    assert (flipped.n_plus, flipped.n_minus) == (d.n_plus, d.n_minus)
    assert parse_pd(flipped.to_pd()).arrows == flipped.arrows
    with pytest.raises(ValueError):
        d.set_crossing_orientations([True])


def test_odd_homology_ignores_arrows():
    d = load_diagram("figure_eight")
    flipped = d.set_crossing_orientations([True, False, True, False])
    first, second = (homology(build_complex(x, "odd")) for x in (d, flipped))
    assert {ij: (g.rank, g.torsion) for ij, g in first.items()} == {ij: (g.rank, g.torsion) for ij, g in second.items()}


@pytest.mark.parametrize("pd", ("PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"))
def test_oriented_smoothing_follows_the_sign(pd):
    d = parse_pd(pd)
    for c, x in enumerate(d.crossings):
        oriented = 0 if x.sign == 1 else 1
        for p, q in x.pairs(oriented):
            assert d.orientation[(c, p)] != d.orientation[(c, q)]
        for p, q in x.pairs(1 - oriented):
            assert d.orientation[(c, p)] == d.orientation[(c, q)]
