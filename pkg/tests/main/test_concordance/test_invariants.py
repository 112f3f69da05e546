import json

import jsonschema
import pytest

from khlab.complexes.khovanov import build_complex
from khlab.concordance.barnatan import NotAKnotException, barnatan_complex
from khlab.concordance.invariants import (
    ALPHAS,
    ConcordanceReport,
    alpha_invariants,
    concordance_report,
    fullness_profile,
    s_invariant,
)
from khlab.diagram.OrientedDiagram import unknot
from khlab.homology.homology import homology
from khlab.io.DiagramParser import load_diagram

knots = (
    "unknot",
    "trefoil_right",
    "trefoil_left",
    "figure_eight",
    "kinked_unknot",
)

# Rasmussen invariant for each knot defined above
s_values = {
    "unknot": 0,
    "trefoil_right": 2,
    "trefoil_left": -2,
    "figure_eight": 0,
    "kinked_unknot": 0,
}


@pytest.fixture(scope="module", params=knots)
def knot(request):
    return request.param, load_diagram(request.param)


def test_filtered_complex(knot):
    _, d = knot
    c = barnatan_complex(d)
    assert c.is_complex()
    assert c.is_filtered()
    assert c.homology_dimension() == 2


def test_s_invariant(knot):
    name, d = knot
    assert s_invariant(d) == s_values[name]


def test_s_of_mirror(knot):
    name, d = knot
    assert s_invariant(d.mirror()) == -s_values[name]


def test_s_of_cinquefoil():
    d = load_diagram("cinquefoil")
    assert s_invariant(d) == (4 if d.n_plus == 5 else -4)


@pytest.mark.parametrize("name", ("trefoil_right", "figure_eight"))
def test_associated_graded_is_mod2_khovanov(name):
    d = load_diagram(name)
    c = barnatan_complex(d)
    khovanov = homology(build_complex(d, "mod2"), "F2")
    for q in c.filtration_levels():
        graded = homology(c.associated_graded(q), "F2")
        ranks = {ij: g.rank for ij, g in graded.items() if g.rank}
        expected = {ij: g.rank for ij, g in khovanov.items() if g.rank and ij[1] == q}
        assert ranks == expected


@pytest.mark.parametrize("alpha", ALPHAS)
def test_alpha_of_unknot(alpha):
    assert alpha_invariants(unknot(), alpha) == (0, 0, 0, 0)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("name", ("trefoil_right", "trefoil_left", "figure_eight"))
def test_alpha_bounds(name, alpha):
    d = load_diagram(name)
    s = s_values[name]
    r_plus, s_plus, r_minus, s_minus = alpha_invariants(d, alpha)
    # genus one knots
    assert all(abs(x) <= 2 for x in (r_plus, s_plus, r_minus, s_minus))
    assert s <= r_plus <= s + 2
    assert s <= s_plus <= s + 2
    assert s - 2 <= r_minus <= s
    assert s - 2 <= s_minus <= s
    assert s_plus - 2 <= r_plus


@pytest.mark.parametrize("alpha", ALPHAS)
def test_alpha_of_mirror(alpha):
    d = load_diagram("trefoil_right")
    r_plus, s_plus, r_minus, s_minus = alpha_invariants(d, alpha)
    mirrored = alpha_invariants(d.mirror(), alpha)
    assert mirrored == (-r_minus, -s_minus, -r_plus, -s_plus)


def test_full_levels_are_half_full():
    profile = fullness_profile(load_diagram("trefoil_right"), "bockstein_even")
    assert set(profile.full()) <= set(profile.half_full())


@pytest.mark.parametrize("name", ("hopf", "unlink2"))
def test_links_are_rejected(name):
    with pytest.raises(NotAKnotException):
        s_invariant(load_diagram(name))
    with pytest.raises(NotAKnotException):
        alpha_invariants(load_diagram(name))


def test_unknown_operation():
    with pytest.raises(NotImplementedError):
        alpha_invariants(unknot(), "steenrod_square_2")


def test_report():
    report = concordance_report(load_diagram("trefoil_right"))
    assert isinstance(report, ConcordanceReport)
    assert report.s == 2
    assert report.slice_genus_bound() == 1
    with open("khlab/inputs/schema/concordance.schema.json") as f:
        jsonschema.validate(report.__jsonrepr__(), json.load(f))
