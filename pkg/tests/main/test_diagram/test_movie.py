import pytest

from khlab.diagram.MovieScript import InvalidMovieException
from khlab.io.MovieParser import load_movie, parse_move, parse_movie

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

# (moves, Euler characteristic, genus) for each movie defined above
surfaces = {
    "khlab/inputs/examples/movies/birth_death.txt": (2, 2, None),
    "khlab/inputs/examples/movies/kink_birth_death.txt": (3, 2, None),
    "khlab/inputs/examples/movies/kink_round_trip.txt": (2, 0, 0),
    "khlab/inputs/examples/movies/split_merge.txt": (2, -2, 1),
    "khlab/inputs/examples/movies/trefoil_to_unknot.txt": (5, -2, 1),
    "khlab/inputs/examples/movies/left_trefoil_to_unknot.txt": (5, -2, 1),
    "khlab/inputs/examples/movies/r3_round_trip.txt": (2, 0, 0),
    "khlab/inputs/examples/movies/trefoil_r2_round_trip.txt": (2, 0, 0),
    "khlab/inputs/examples/movies/trefoil_birth_saddle.txt": (2, 0, 0),
    "khlab/inputs/examples/movies/figure_eight_kink.txt": (2, 0, 0),
}


@pytest.mark.parametrize("movie", movies)
def test_movie_files(movie):
    script = load_movie(movie)
    (moves, chi, genus) = surfaces[movie]
    assert len(script) == moves
    assert script.euler_characteristic() == chi
    assert script.genus() == genus
    assert script.start is not None
    assert len(script.frames()) == moves + 1


def test_move_arguments():
    move = parse_move("R1+ e5 n r")
    assert (move.kind, move.edges, move.options) == ("R1+", (5,), ("n", "r"))
    assert parse_move("R3 c1 c2 c3").crossings == (0, 1, 2)
    assert str(parse_move("R2- c2 c5")) == "R2- c2 c5"


@pytest.mark.parametrize("line", ("R1- e3", "R3 c1 c2", "birth e1", "saddle e1", "twist c1", "R1- c0"))
def test_bad_moves(line):
    with pytest.raises(InvalidMovieException):
        parse_move(line, 4)


def test_line_number_reported():
    with pytest.raises(InvalidMovieException) as info:
        parse_movie("U\nbirth\ndeath e42\n").rewrites()
    assert info.value.line == 3


def test_start_after_moves():
    with pytest.raises(InvalidMovieException):
        parse_movie("birth\nU\n")


def test_missing_start():
    with pytest.raises(InvalidMovieException):
        parse_movie("birth\n").rewrites()


@pytest.mark.parametrize("name", ("trefoil_to_unknot", "left_trefoil_to_unknot"))
def test_trefoil_movies_pass_through_a_two_component_link(name):
    frames = load_movie(f"khlab/inputs/examples/movies/{name}.txt").frames()
    assert [f.n for f in frames] == [3, 3, 2, 2, 1, 0]
    assert [f.number_of_components() for f in frames] == [1, 2, 2, 1, 1, 1]
    assert frames[-1].free_loops == (2,)
