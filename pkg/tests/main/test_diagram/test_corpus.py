import numpy as np
import pytest

from khlab.complexes.khovanov import build_complex
from khlab.homology.homology import homology
from khlab.invariants.jones import jones_polynomial, laurent_coefficients
from khlab.io.corpus import (
    braid_closure,
    braid_pairs,
    default_corpus,
    named_corpus,
    r1_pairs,
    r2_pairs,
    random_corpus,
    with_random_basepoint,
)

# (braid word, strands) closures
braids = (
    ([1, 1, 1], 2),
    ([-1, -1, -1], 2),
    ([1, -2, 1, -2], 3),
    ([1], 2),
    ([], 2),
)

# (crossings, components, Jones polynomial) for each braid defined above
expected = {
    0: (3, 1, {1: 1, 3: 1, 5: 1, 9: -1}),
    1: (3, 1, {-1: 1, -3: 1, -5: 1, -9: -1}),
    2: (4, 1, {-5: 1, 5: 1}),
    3: (1, 1, {-1: 1, 1: 1}),
    4: (0, 2, {-2: 1, 0: 2, 2: 1}),
}


def signature(d, theory="even"):
    return {ij: (g.rank, tuple(g.torsion)) for ij, g in homology(build_complex(d, theory)).items()}


@pytest.mark.parametrize("index", range(len(braids)))
def test_braid_closure(index):
    word, strands = braids[index]
    d = braid_closure(word, strands)
    n, components, jones = expected[index]
    assert d.n == n
    assert d.number_of_components() == components
    assert laurent_coefficients(jones_polynomial(d)) == jones


@pytest.mark.parametrize("word, strands", (([3], 3), ([1], 0)))
def test_bad_braid(word, strands):
    with pytest.raises(ValueError):
        braid_closure(word, strands)


def test_random_corpus_is_seeded():
    first = [e.diagram.to_pd() for e in random_corpus(5, seed=11)]
    second = [e.diagram.to_pd() for e in random_corpus(5, seed=11)]
    assert first == second
    assert len({e.name for e in random_corpus(5, seed=11)}) == 5


def test_default_corpus_starts_with_named_diagrams():
    named = named_corpus()
    corpus = default_corpus(3, seed=1)
    assert len(corpus) == len(named) + 3
    assert [e.name for e in corpus[: len(named)]] == [e.name for e in named]
    assert "trefoil" not in {e.name for e in named}


def test_random_basepoint():
    d = braid_closure([1, 1, 1], 2)
    pointed = with_random_basepoint(d, np.random.default_rng(0))
    assert pointed.basepoint in d.edges


def test_r1_pairs():
    entries = named_corpus()
    pairs = r1_pairs(entries, seed=2)
    assert len(pairs) == sum(1 for e in entries if e.diagram.edges)
    for pair in pairs:
        assert pair.kind == "R1"
        assert pair.second.n == pair.first.n + 1
        assert pair.step.kind == "R1+" and pair.step.before == pair.first


def test_r2_pairs():
    for pair in r2_pairs(named_corpus(), seed=5):
        assert pair.kind == "R2"
        assert pair.second.n == pair.first.n + 2
        assert pair.step.kind == "R2+" and pair.step.after == pair.second


@pytest.mark.parametrize("pair", braid_pairs(24, seed=0, max_length=3), ids=lambda p: p.name)
def test_braid_pairs_have_equal_homology(pair):
    assert pair.kind in ("R2", "R3")
    assert signature(pair.first) == signature(pair.second)
    assert signature(pair.first, "odd") == signature(pair.second, "odd")
