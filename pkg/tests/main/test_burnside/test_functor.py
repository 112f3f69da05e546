import numpy as np
import pytest

from khlab.burnside.coherence import (
    check_hexagons,
    cofibration_sequence,
    coproduct_check,
    doubling_check,
    forgetful_check,
    reassignment_map,
    reduced_functors,
    reduced_sign_check,
    transpose_check,
)
from khlab.burnside.SignedBurnsideFunctor import build_functor, random_signs, totalize
from khlab.burnside.SignedCorrespondence import CoherenceException, SignedCorrespondence
from khlab.complexes.khovanov import build_complex
from khlab.homology.homology import homology
from khlab.io.DiagramParser import load_diagram

diagrams = (
    "PD[X(1,4,2,3),X(3,2,4,1)]",
    "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]",
    "PD[X(1,2,3,3),X(2,1,4,4)]",
    "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]",
)

# Whether the cube of each diagram defined above has 3-dimensional faces
three_dimensional = {
    "PD[X(1,4,2,3),X(3,2,4,1)]": False,
    "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]": True,
    "PD[X(1,2,3,3),X(2,1,4,4)]": False,
    "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]": True,
}


@pytest.fixture
def trefoil_functor():
    return build_functor(load_diagram("PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)] bp=1"))


@pytest.mark.parametrize("pd", diagrams)
def test_hexagons(pd):
    f = build_functor(load_diagram(pd))
    report = check_hexagons(f)
    assert report.passed
    assert (report.hexagons > 0) == three_dimensional[pd]


@pytest.mark.parametrize("pd", diagrams)
def test_totalization(pd):
    f = build_functor(load_diagram(pd))
    assert f.number_of_objects() == build_complex(load_diagram(pd), "odd").total_rank()
    assert transpose_check(f)
    assert doubling_check(f)
    assert coproduct_check(f)
    assert forgetful_check(f).passed


def test_tot_has_odd_homology(trefoil_functor):
    tot = totalize(trefoil_functor)
    odd = build_complex(trefoil_functor.diagram, "odd")
    assert tot.is_complex()
    assert {ij: g.rank for ij, g in homology(tot).items()} == {ij: g.rank for ij, g in homology(odd).items()}


def test_sign_reassignment(trefoil_functor):
    zeta = random_signs(trefoil_functor, seed=3)
    f = reassignment_map(trefoil_functor, zeta)
    assert f.is_chain_map()
    for ij in f.source.bigradings():
        assert np.array_equal(np.abs(f.block(*ij)), np.eye(f.source.rank(*ij), dtype=np.int64))


def test_cofibration(trefoil_functor):
    plus, minus = reduced_functors(trefoil_functor)
    assert plus.number_of_objects() + minus.number_of_objects() == trefoil_functor.number_of_objects()
    selection = set(plus.vertex_of)
    assert cofibration_sequence(trefoil_functor, selection).exactness().passed
    assert reduced_sign_check(trefoil_functor).passed


def test_open_selection(trefoil_functor):
    plus, minus = reduced_functors(trefoil_functor)
    with pytest.raises(CoherenceException):
        cofibration_sequence(trefoil_functor, set(minus.vertex_of))


def test_correspondence_composition():
    first = SignedCorrespondence(0b11, 0b01)
    first.add("a", "x", "y", 1)
    first.add("b", "x", "z", -1)
    second = SignedCorrespondence(0b01, 0b00)
    second.add("c", "y", "w", -1)
    second.add("d", "z", "w", -1)
    composite = first.then(second)
    assert len(composite) == 2
    assert composite.multiplicity("x", "w") == 0
    assert composite.abelianize(["x"], ["w"]).tolist() == [[0]]
    with pytest.raises(ValueError):
        second.then(first)
    with pytest.raises(ValueError):
        first.add("e", "x", "y", 0)
