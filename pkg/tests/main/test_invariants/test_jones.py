import pytest

from khlab.complexes.khovanov import build_complex
from khlab.diagram.OrientedDiagram import unknot
from khlab.invariants.jones import (
    jones_polynomial,
    jones_report,
    kauffman_bracket,
    laurent_coefficients,
    q,
    state_loops,
)
from khlab.io.DiagramParser import load_diagram

diagrams = (
    "unknot",
    "hopf",
    "trefoil_right",
    "trefoil_left",
    "figure_eight",
    "kinked_unknot",
    "double_kinked_unknot",
    "unlink2",
    "cinquefoil",
)

# unnormalized Jones polynomial for each diagram defined above that has a closed form here
jones_values = {
    "unknot": {-1: 1, 1: 1},
    "trefoil_right": {1: 1, 3: 1, 5: 1, 9: -1},
    "trefoil_left": {-1: 1, -3: 1, -5: 1, -9: -1},
    "figure_eight": {-5: 1, 5: 1},
    "kinked_unknot": {-1: 1, 1: 1},
    "double_kinked_unknot": {-1: 1, 1: 1},
    "unlink2": {-2: 1, 0: 2, 2: 1},
}


@pytest.mark.parametrize("name", jones_values)
def test_jones_polynomial(name):
    assert laurent_coefficients(jones_polynomial(load_diagram(name))) == jones_values[name]


def test_normalized_jones_of_trefoil():
    normalized = jones_polynomial(load_diagram("trefoil_right"), normalized=True)
    assert laurent_coefficients(normalized) == {2: 1, 6: 1, 8: -1}


def test_laurent_coefficients_cancel():
    assert laurent_coefficients(q + 1 / q - q) == {-1: 1}
    assert laurent_coefficients(q - q) == {}


def test_state_loops_of_trefoil():
    d = load_diagram("trefoil_right")
    assert state_loops(d, (0, 0, 0)) == 2
    assert state_loops(d, (1, 1, 1)) == 3
    assert state_loops(d, (1, 0, 0)) == 1


def test_bracket_of_free_loops():
    assert laurent_coefficients(kauffman_bracket(unknot())) == {-1: 1, 1: 1}


@pytest.mark.parametrize("name", diagrams)
def test_jones_matches_euler_characteristic(name):
    report = jones_report(load_diagram(name))
    assert report.match
    assert report.euler == report.jones


@pytest.mark.parametrize("name", ("trefoil_right", "hopf"))
def test_jones_matches_homology(name):
    d = load_diagram(name)
    report = jones_report(d, build_complex(d, "odd"), with_homology=True)
    assert report.euler_from_homology == report.jones
    assert report.match


def test_report_json():
    result = jones_report(load_diagram("figure_eight")).__jsonrepr__()
    assert result["match"] is True
    assert set(result) == {"jones", "euler", "bracket", "match"}
