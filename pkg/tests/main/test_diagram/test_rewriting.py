from itertools import permutations

import pytest

from khlab.diagram import rewriting
from khlab.diagram.OrientedDiagram import InvalidDiagramException, unknot
from khlab.io.corpus import braid_closure
from khlab.io.PDParser import parse_pd

trefoil = "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]"

kinks = (("p", "l"), ("p", "r"), ("n", "l"), ("n", "r"))


def first_r2(d):
    for a, b in permutations(sorted(d.edges), 2):
        try:
            return rewriting.r2_insert(d, a, b)
        except InvalidDiagramException:
            continue
    raise AssertionError(f"No R2 insertion found on {d}")


@pytest.mark.parametrize("kink", kinks)
def test_r1_round_trip(kink):
    d = parse_pd(trefoil)
    step = rewriting.r1_insert(d, 1, *kink)
    assert step.after.n == 4
    assert step.after.writhe == d.writhe + (1 if kink[0] == "p" else -1)
    back = rewriting.r1_remove(step.after, step.new_crossings[0])
    assert back.after.n == 3
    assert back.after.writhe == d.writhe


def test_r1_on_free_loop():
    step = rewriting.r1_insert(unknot(), 1, "p", "l")
    assert step.after.n == 1
    assert not step.after.free_loops
    assert step.after.n_plus == 1


def test_r2_round_trip():
    d = parse_pd(trefoil)
    step = first_r2(d)
    assert step.after.n == 5
    assert step.after.writhe == d.writhe
    back = rewriting.r2_remove(step.after, *step.new_crossings)
    assert back.after.n == 3
    assert back.after.writhe == d.writhe


def test_r2_same_edge():
    with pytest.raises(InvalidDiagramException):
        rewriting.r2_insert(parse_pd(trefoil), 1, 1)


def test_r3_keeps_signs():
    d = braid_closure([1, 2, 1], 3)
    step = rewriting.r3(d, 0, 1, 2)
    assert step.after.n == 3
    assert [x.sign for x in step.after.crossings] == [x.sign for x in d.crossings]
    assert step.after.number_of_components() == d.number_of_components()


def test_r3_needs_triangle():
    with pytest.raises(InvalidDiagramException):
        rewriting.r3(parse_pd("PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]"), 0, 1, 3)


def test_birth_death():
    d = parse_pd(trefoil)
    born = rewriting.birth(d)
    assert len(born.after.free_loops) == 1
    dead = rewriting.death(born.after)
    assert dead.after == d


def test_death_needs_loop():
    with pytest.raises(InvalidDiagramException):
        rewriting.death(parse_pd(trefoil))


def test_saddle_splits_unknot():
    step = rewriting.saddle(unknot(), 1, 1)
    assert step.after.number_of_components() == 2
    merge = rewriting.saddle(step.after, *sorted(step.after.edges))
    assert merge.after.number_of_components() == 1
