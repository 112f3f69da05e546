import itertools

import pytest

from khlab.algebra.AlgebraElement import AlgebraElement, merge, normalize, permutation_parity, split
from khlab.algebra.RingElem import RingElem
from khlab.datatypes import Constants
from khlab.io.DiagramParser import load_diagram
from khlab.resolution.ResolutionCube import edge_matrix_raw

one = RingElem.one()
xi = RingElem.xi_power(1)

# (tensor word, expected {monomial: (m, n)}) pairs for normalize with coefficient 1
words = (
    ((2, 1), {(1, 2): (0, 1)}),
    ((1, 1), {}),
    ((3, 1, 2), {(1, 2, 3): (1, 0)}),
    ((), {(): (1, 0)}),
    ((4, 2, 1), {(1, 2, 4): (0, 1)}),
)


def as_pairs(x: AlgebraElement) -> dict:
    return {m: (c.m, c.n) for m, c in x.terms.items()}


@pytest.mark.parametrize("word, expected", words)
def test_normalize(word, expected):
    assert as_pairs(normalize(word, one)) == expected


def test_normalize_under_permutations():
    word = (1, 2, 3, 4)
    for sigma in itertools.permutations(word):
        sign = RingElem.xi_power(permutation_parity(sigma))
        assert normalize(sigma, one) == normalize(word, sign)


def test_ring_arithmetic():
    a = RingElem(2, 3)
    b = RingElem(1, -1)
    # (2 + 3ξ)(1 - ξ) = 2 - 3 + (3 - 2)ξ
    assert a * b == RingElem(-1, 1)
    assert xi * xi == one
    assert (a + b).m == 3 and (a + b).n == 2
    assert RingElem(2, 3, Constants.EVEN).m == 5
    assert RingElem(2, 3, Constants.ODD).m == -1
    assert RingElem(2, 3, Constants.MOD2).m == 1
    with pytest.raises(ValueError):
        a + RingElem(1, 0, Constants.EVEN)


@pytest.mark.parametrize("theory", (Constants.EVEN, Constants.ODD, Constants.MOD2))
def test_specialization_is_a_ring_map(theory):
    values = [RingElem(m, n) for m in range(-2, 3) for n in range(-2, 3)]
    for a, b in itertools.product(values, repeat=2):
        assert (a * b).specialize(theory) == a.specialize(theory) * b.specialize(theory)
        assert (a + b).specialize(theory) == a.specialize(theory) + b.specialize(theory)


def test_merge():
    relabel = {3: 2}
    assert as_pairs(merge(AlgebraElement.from_monomial([0]), 0, 1, 1, relabel)) == {(1,): (1, 0)}
    assert merge(AlgebraElement.from_monomial([0, 1]), 0, 1, 1, relabel).is_zero()
    # a₁ = 0, b = 3 -> 2, merged circle 5: the word (5, 2) needs one swap
    assert as_pairs(merge(AlgebraElement.from_monomial([0, 3]), 0, 1, 5, relabel)) == {(2, 5): (0, 1)}


def test_split_of_unit():
    assert as_pairs(split(AlgebraElement.from_monomial([]), 0, 1, 2, {})) == {(1,): (1, 0), (2,): (0, 1)}


@pytest.mark.parametrize("monomial", ((), (0,), (3,), (0, 3), (3, 4), (0, 3, 4)))
def test_split_embedding_is_immaterial(monomial):
    relabel = {3: 3, 4: 4}
    x = AlgebraElement.from_monomial(monomial)
    assert split(x, 0, 1, 2, relabel, embed_to=1) == split(x, 0, 1, 2, relabel, embed_to=2)


def test_split_of_circle():
    assert as_pairs(split(AlgebraElement.from_monomial([0]), 0, 1, 2, {})) == {(1, 2): (1, 0)}
    with pytest.raises(ValueError):
        split(AlgebraElement.from_monomial([0]), 0, 1, 2, {}, embed_to=7)


@pytest.mark.parametrize("theory", (Constants.EVEN, Constants.ODD))
def test_specialization_commutes_with_split(theory):
    x = AlgebraElement.from_monomial([3, 4]) + AlgebraElement.from_monomial([0])
    assert split(x, 0, 1, 2, {3: 3, 4: 4}).specialize(theory) == split(x.specialize(theory), 0, 1, 2, {3: 3, 4: 4})


def test_odd_edge_maps_have_unit_entries():
    d = load_diagram("figure_eight")
    for v in range(2**d.n):
        for k in range(d.n):
            if v >> k & 1:
                continue
            m = edge_matrix_raw(d, v | 1 << k, v, Constants.ODD)
            assert all(entry.m in (-1, 0, 1) for entry in m.flat)
