from itertools import permutations

import pytest

from khlab.complexes.khovanov import build_complex
from khlab.diagram import rewriting
from khlab.diagram.OrientedDiagram import InvalidDiagramException, unknot
from khlab.homology.elimination import CancellationException
from khlab.io.corpus import braid_closure, named_corpus, r1_pairs, r2_pairs
from khlab.io.DiagramParser import load_diagram
from khlab.moves.cancellation import CancellationSite, cancel_merge, discarded, merge_pairs, split_pairs
from khlab.moves.reidemeister import reidemeister_map, reidemeister_step, triangle_sites
from khlab.resolution.ResolutionCube import ResolutionCube

trefoil = "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]"

kinks = (("p", "l"), ("p", "r"), ("n", "l"), ("n", "r"))

theories = ("even", "odd", "mod2")


def first_r2(d):
    for a, b in permutations(sorted(d.edges), 2):
        try:
            return rewriting.r2_insert(d, a, b)
        except InvalidDiagramException:
            continue
    raise AssertionError(f"No R2 insertion found on {d}")


def assert_quasi_isomorphism(witness):
    assert witness.is_chain_map
    assert witness.is_quasi_iso
    assert witness.shift == (0, 0)


def test_cancel_merge_on_kink():
    c = build_complex(load_diagram("PD[X(1,1,2,2)]"), "odd")
    site = CancellationSite(0, 1)
    pairs = merge_pairs(c, site)
    assert len(pairs) == 2
    assert discarded(c, pairs).total_rank() == 4
    reduced, witness = cancel_merge(c, site)
    assert reduced.total_rank() == 2
    assert_quasi_isomorphism(witness)


def test_wrong_site():
    c = build_complex(load_diagram("PD[X(1,1,2,2)]"), "even")
    with pytest.raises(CancellationException):
        split_pairs(c, CancellationSite(0, 1))


@pytest.mark.parametrize("kink", kinks)
@pytest.mark.parametrize("theory", theories)
def test_r1_insertion(kink, theory):
    d = load_diagram(trefoil)
    assert_quasi_isomorphism(reidemeister_map(d, rewriting.r1_insert(d, 2, *kink), theory))


@pytest.mark.parametrize("kink", kinks)
def test_r1_removal(kink):
    kinked = rewriting.r1_insert(unknot(), 1, *kink).after
    assert_quasi_isomorphism(reidemeister_map(kinked, rewriting.r1_remove(kinked, 0), "odd"))


@pytest.mark.parametrize("theory", theories)
def test_r2(theory):
    d = load_diagram(trefoil)
    step = first_r2(d)
    assert_quasi_isomorphism(reidemeister_map(d, step, theory))
    back = rewriting.r2_remove(step.after, *step.new_crossings)
    assert_quasi_isomorphism(reidemeister_map(step.after, back, theory))


@pytest.mark.parametrize("theory", theories)
def test_r3(theory):
    d = braid_closure([1, 2, 1], 3)
    witness = reidemeister_map(d, rewriting.r3(d, 0, 1, 2), theory)
    assert_quasi_isomorphism(witness)
    # built from cancellations on both sides, not from minimal models
    assert not witness.canonical


def test_r3_sites():
    d = braid_closure([1, 2, 1], 3)
    step = rewriting.r3(d, 0, 1, 2)
    assert len(step.loop_labels) == 3
    sites, c, state = triangle_sites(step, ResolutionCube(d))
    assert sorted(kind for kind, _ in sites) == ["merge", "split"]
    assert sites[0][0] == "merge"
    assert c not in {site.crossing for _, site in sites}
    assert triangle_sites(rewriting.reverse(step), ResolutionCube(step.after)) == (sites, c, state)


def test_r3_round_trip():
    d = braid_closure([1, 2, 1], 3)
    step = rewriting.r3(d, 0, 1, 2)
    there = reidemeister_map(d, step, "odd")
    back = reidemeister_map(step.after, rewriting.reverse(step), "odd")
    for witness in (there, back):
        assert_quasi_isomorphism(witness)
        assert not witness.canonical


def test_unified_is_rejected():
    d = load_diagram(trefoil)
    with pytest.raises(ValueError):
        reidemeister_step(build_complex(d, "unified"), rewriting.r1_insert(d, 1))


@pytest.mark.parametrize("pair", r1_pairs(named_corpus()) + r2_pairs(named_corpus()), ids=lambda p: p.name)
@pytest.mark.parametrize("theory", ("even", "odd"))
def test_corpus_moves_cancel(pair, theory):
    witness = reidemeister_map(pair.first, pair.step, theory)
    assert_quasi_isomorphism(witness)
    assert not witness.canonical
    assert witness.target.diagram == pair.second
