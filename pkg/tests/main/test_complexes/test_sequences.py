import pytest

from khlab.complexes.ChainMap import identity_map, mapping_cone
from khlab.complexes.khovanov import build_complex, reduced_quotient, reduced_subcomplex
from khlab.complexes.sequences import (
    mod2_agreement,
    odd_splitting_check,
    reduced_ses_check,
    ses_even_unified_odd,
    unified_pullback_check,
)
from khlab.homology.homology import homology
from khlab.io.DiagramParser import load_diagram

diagrams = (
    "PD[X(1,4,2,3),X(3,2,4,1)]",
    "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]",
    "PD[X(1,1,2,2)]",
    "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]",
    "PD[X(1,2,3,3),X(2,1,4,4)]",
    "U U",
)

theories = ("even", "odd", "unified", "mod2")


@pytest.fixture
def trefoil():
    return load_diagram("PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]")


@pytest.mark.parametrize("pd", diagrams)
@pytest.mark.parametrize("theory", theories)
def test_d_squared(pd, theory):
    assert build_complex(load_diagram(pd), theory).is_complex()


@pytest.mark.parametrize("pd", diagrams)
def test_mod2_agreement(pd):
    assert mod2_agreement(load_diagram(pd)).passed


@pytest.mark.parametrize("pd", diagrams)
def test_unified_pullback(pd):
    assert unified_pullback_check(load_diagram(pd)).passed


@pytest.mark.parametrize("pd", diagrams)
@pytest.mark.parametrize("variant", ("e-u-o", "o-u-e"))
def test_short_exact_sequence(pd, variant):
    report = ses_even_unified_odd(load_diagram(pd), variant).exactness()
    assert report.passed
    assert report.checked > 0


@pytest.mark.parametrize("pd", diagrams)
def test_odd_splitting(pd):
    assert odd_splitting_check(load_diagram(pd)).passed


@pytest.mark.parametrize("theory", ("even", "odd"))
def test_reduced_sequence(trefoil, theory):
    assert reduced_ses_check(build_complex(trefoil, theory), 3).passed


def test_reduced_needs_basepoint(trefoil):
    with pytest.raises(ValueError):
        reduced_subcomplex(build_complex(trefoil))
    with pytest.raises(ValueError):
        reduced_quotient(build_complex(trefoil), 42)


def test_euler_characteristic_of_unified(trefoil):
    even, unified = build_complex(trefoil, "even"), build_complex(trefoil, "unified")
    assert unified.euler_characteristic() == even.euler_characteristic()
    assert unified.total_rank() == 2 * even.total_rank()


def test_identity_cone_is_acyclic(trefoil):
    c = build_complex(trefoil, "odd")
    cone = mapping_cone(identity_map(c))
    assert cone.is_complex()
    assert not homology(cone)


def test_transpose_twice(trefoil):
    c = build_complex(trefoil, "odd")
    assert c.transpose().transpose() == c
    assert c.transpose().is_complex()


def test_unknown_sequence(trefoil):
    with pytest.raises(NotImplementedError):
        ses_even_unified_odd(trefoil, "u-e-o")
