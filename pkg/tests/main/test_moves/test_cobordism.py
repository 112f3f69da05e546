import itertools

import pytest

from khlab.concordance.invariants import s_invariant
from khlab.diagram.OrientedDiagram import InvalidDiagramException, unknot
from khlab.io.DiagramParser import load_diagram
from khlab.io.MovieParser import load_movie
from khlab.moves.cobordism import (
    birth_cochain_map,
    birth_map,
    death_cochain_map,
    death_map,
    saddle_cochain_map,
    saddle_map,
)
from khlab.moves.movie import cobordism_report, movie_map

movies = (
    "khlab/inputs/examples/movies/birth_death.txt",
    "khlab/inputs/examples/movies/kink_birth_death.txt",
    "khlab/inputs/examples/movies/kink_round_trip.txt",
    "khlab/inputs/examples/movies/split_merge.txt",
    "khlab/inputs/examples/movies/trefoil_to_unknot.txt",
    "khlab/inputs/examples/movies/left_trefoil_to_unknot.txt",
    "khlab/inputs/examples/movies/r3_round_trip.txt",
    "khlab/inputs/examples/movies/trefoil_r2_round_trip.txt",
    "khlab/inputs/examples/movies/trefoil_birth_saddle.txt",
    "khlab/inputs/examples/movies/figure_eight_kink.txt",
)

# Bidegree of the composite map for each movie defined above
degrees = {
    "khlab/inputs/examples/movies/birth_death.txt": (0, 2),
    "khlab/inputs/examples/movies/kink_birth_death.txt": (0, 2),
    "khlab/inputs/examples/movies/kink_round_trip.txt": (0, 0),
    "khlab/inputs/examples/movies/split_merge.txt": (0, -2),
    "khlab/inputs/examples/movies/trefoil_to_unknot.txt": (0, -2),
    "khlab/inputs/examples/movies/left_trefoil_to_unknot.txt": (0, -2),
    "khlab/inputs/examples/movies/r3_round_trip.txt": (0, 0),
    "khlab/inputs/examples/movies/trefoil_r2_round_trip.txt": (0, 0),
    "khlab/inputs/examples/movies/trefoil_birth_saddle.txt": (0, 0),
    "khlab/inputs/examples/movies/figure_eight_kink.txt": (0, 0),
}


@pytest.fixture
def trefoil():
    return load_diagram("PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]")


def _rank(c):
    return sum(len(gens) for gens in c.generators.values())


@pytest.mark.parametrize("theory", ("even", "odd"))
def test_birth_and_death(trefoil, theory):
    born = birth_map(trefoil, theory)
    assert born.is_chain_map
    assert born.shift == (0, -1)
    assert born.target.diagram == trefoil
    dead = death_map(born.source.diagram, theory=theory)
    assert dead.is_chain_map
    assert dead.shift == (0, -1)
    assert dead.source.diagram == trefoil


@pytest.mark.parametrize("theory", ("even", "odd"))
def test_birth_on_unknot_projects(theory):
    born = birth_map(unknot(), theory)
    assert (_rank(born.source), _rank(born.target)) == (4, 2)
    # a single ±1 for each of the two generators without U
    entries = [int(x) for block in born.chain_map.blocks.values() for x in block.flatten() if x]
    assert sorted(abs(x) for x in entries) == [1, 1]


@pytest.mark.parametrize("theory", ("even", "odd"))
def test_death_includes_generators_with_the_loop(theory):
    two = birth_map(unknot(), theory).source.diagram
    dead = death_map(two, theory=theory)
    assert (_rank(dead.source), _rank(dead.target)) == (2, 4)
    assert sum(int((block != 0).sum()) for block in dead.chain_map.blocks.values()) == 2


def test_cochain_maps_are_the_transposes():
    born = birth_cochain_map(unknot(), "odd")
    assert born.shift == (0, 1)
    assert (_rank(born.source), _rank(born.target)) == (2, 4)
    assert born.dual().chain_map == birth_map(unknot(), "odd").chain_map
    assert death_cochain_map(born.target.diagram, theory="odd").shift == (0, 1)


def test_death_after_birth_of_unknot_is_zero():
    # including x∧U and then projecting onto the generators without U
    born = birth_map(unknot(), "odd")
    dead = death_map(born.source.diagram, theory="odd")
    composite = dead.then(born)
    assert composite.is_chain_map
    assert all(not block.any() for block in composite.chain_map.blocks.values())


@pytest.mark.parametrize("theory", ("even", "odd"))
def test_saddle_split_and_merge(theory):
    split = saddle_map(unknot(), 1, 1, theory)
    assert split.is_chain_map
    assert split.shift == (0, 1)
    assert saddle_cochain_map(unknot(), 1, 1, theory).shift == (0, -1)
    two = split.source.diagram
    assert len(two.free_loops) == 2
    merge = saddle_map(two, *sorted(two.edges), theory=theory)
    assert merge.is_chain_map
    assert merge.shift == (0, 1)


def test_saddle_on_trefoil(trefoil):
    witnesses = []
    for e1, e2 in itertools.combinations(sorted(trefoil.edges), 2):
        try:
            witnesses.append(saddle_map(trefoil, e1, e2, "odd"))
        except InvalidDiagramException:
            continue
    assert witnesses
    for witness in witnesses:
        assert witness.is_chain_map


@pytest.mark.parametrize("movie", movies)
@pytest.mark.parametrize("theory", ("even", "odd"))
def test_movie_files(movie, theory):
    report = movie_map(load_movie(movie), theory=theory)
    assert report.witness.is_chain_map
    assert report.degree == degrees[movie]
    assert len(report.steps) == len(load_movie(movie))


@pytest.mark.parametrize("movie", movies)
def test_cobordism_report_compares_mod2(movie):
    report = cobordism_report(load_movie(movie))
    assert report.mod2_matches_even is True
    assert not report.witness.canonical
    assert report.__jsonrepr__()["chain_map"]
    assert report.dual_degree == tuple(-x for x in degrees[movie])


def test_movies_respect_the_genus_bound():
    # |s(K) - s(K')| <= 2g for a connected cobordism of genus g between knots
    gaps = []
    for movie in movies:
        script = load_movie(movie)
        frames = script.frames()
        start, end = frames[0], frames[-1]
        if script.genus() is None or start.number_of_components() != 1 or end.number_of_components() != 1:
            continue
        gap = abs(s_invariant(start) - s_invariant(end))
        assert gap <= 2 * script.genus()
        gaps.append(gap)
    assert len(gaps) >= 8
    assert max(gaps) == 2


def test_dual_movie_runs_backwards():
    report = movie_map(load_movie("khlab/inputs/examples/movies/trefoil_to_unknot.txt"), theory="odd")
    dual = report.dual
    assert dual.is_chain_map
    assert dual.shift == (0, 2)
    assert dual.source.diagram == report.witness.target.diagram
    assert len(dual.parts) == len(report.steps)
