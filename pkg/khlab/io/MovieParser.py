import logging
import os
import re

from khlab.diagram.MovieScript import InvalidMovieException, Move, MovieScript
from khlab.diagram.OrientedDiagram import InvalidDiagramException, OrientedDiagram
from khlab.io.PDParser import parse_pd

logger = logging.getLogger(__name__)

EDGE = re.compile(r"^e(\d+)$")
CROSSING = re.compile(r"^c(\d+)$")


class MovieParser:
    """! Parse a movie script: one move per line, `#` comments, optional leading PD line.

    Moves: `R1+ e5 [p|n] [l|r]`, `R1- c3`, `R2+ e3 e7`, `R2- c2 c5` (or the two bigon edges),
    `R3 c1 c2 c3`, `birth`, `death [e7]`, `saddle e2 e9`. Crossings are numbered from 1.
    """

    def __init__(self, movie: str | MovieScript):
        if isinstance(movie, MovieScript):
            self.movie: MovieScript | None = movie
            self.source = None
        else:
            self.movie = None
            self.source = movie

    def run(self):
        if self.movie is not None:
            return
        assert self.source is not None
        if os.path.isfile(self.source):
            with open(self.source, encoding="utf-8") as fp:
                text = fp.read()
        else:
            text = self.source
        self.movie = parse_movie(text)
        logger.info(f"Parsed movie with {len(self.movie)} moves.")

    def get_movie(self) -> MovieScript:
        if self.movie is None:
            self.run()
        assert self.movie is not None
        return self.movie


def parse_movie(text: str) -> MovieScript:
    moves: list[Move] = []
    start: OrientedDiagram | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(("PD", "U")):
            if moves or start is not None:
                raise InvalidMovieException("A start diagram may only appear before the first move", number)
            try:
                start = parse_pd(line)
            except InvalidDiagramException as exc:
                raise InvalidMovieException(str(exc), number) from exc
            continue
        moves.append(parse_move(line, number))
    return MovieScript(moves, start)


def parse_move(line: str, number: int | None = None) -> Move:
    kind, *args = line.split()
    edges: list[int] = []
    crossings: list[int] = []
    options: list[str] = []
    for arg in args:
        if m := EDGE.match(arg):
            edges.append(int(m.group(1)))
        elif m := CROSSING.match(arg):
            if int(m.group(1)) < 1:
                raise InvalidMovieException(f"Crossing numbers start at 1, got {arg}", number)
            crossings.append(int(m.group(1)) - 1)
        elif arg in ("p", "n", "l", "r"):
            options.append(arg)
        else:
            raise InvalidMovieException(f"Cannot read argument {arg!r} of {kind}", number)

    match kind:
        case "R1+":
            valid = len(edges) == 1 and not crossings and _kink_options(options)
        case "R1-":
            valid = len(crossings) == 1 and not edges and not options
        case "R2+" | "saddle":
            valid = len(edges) == 2 and not crossings and not options
        case "R2-":
            valid = (len(crossings) == 2 and not edges or len(edges) == 2 and not crossings) and not options
        case "R3":
            valid = len(crossings) == 3 and not edges and not options
        case "birth":
            valid = not args
        case "death":
            valid = len(edges) <= 1 and not crossings and not options
        case _:
            raise InvalidMovieException(f"Unknown move {kind!r}", number)
    if not valid:
        raise InvalidMovieException(f"Wrong arguments for {kind}: {' '.join(args)!r}", number)
    return Move(kind, tuple(edges), tuple(crossings), tuple(options), number)


def _kink_options(options: list[str]) -> bool:
    if not options:
        return True
    if options[0] not in ("p", "n"):
        return False
    return len(options) == 1 or len(options) == 2 and options[1] in ("l", "r")


def load_movie(movie: str | MovieScript) -> MovieScript:
    parser = MovieParser(movie)
    parser.run()
    return parser.get_movie()
