import logging
from dataclasses import dataclass
from typing import Iterator

from khlab.diagram import rewriting
from khlab.diagram.OrientedDiagram import InvalidDiagramException, OrientedDiagram
from khlab.diagram.rewriting import Rewrite

logger = logging.getLogger(__name__)


class InvalidMovieException(Exception):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Move:
    """! One movie line.

    `edges` holds edge labels and `crossings` 0-based crossing indices; `options` carries the kink
    type of an R1 insertion.
    """

    kind: str
    edges: tuple[int, ...] = ()
    crossings: tuple[int, ...] = ()
    options: tuple[str, ...] = ()
    line: int | None = None

    def __str__(self):
        parts = [self.kind]
        parts += [f"e{e}" for e in self.edges]
        parts += [f"c{c + 1}" for c in self.crossings]
        parts += list(self.options)
        return " ".join(parts)


class MovieScript:
    """! An ordered list of elementary moves applied to a start diagram"""

    KINDS = ("R1+", "R1-", "R2+", "R2-", "R3", "birth", "death", "saddle")

    def __init__(self, moves: list[Move], start: OrientedDiagram | None = None):
        for move in moves:
            if move.kind not in MovieScript.KINDS:
                raise InvalidMovieException(f"Unknown move {move.kind}", move.line)
        self.moves = moves
        self.start = start

    def __len__(self):
        return len(self.moves)

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    def with_start(self, start: OrientedDiagram) -> "MovieScript":
        return MovieScript(self.moves, start)

    def rewrites(self, start: OrientedDiagram | None = None) -> list[Rewrite]:
        """! Apply every move in order.
        @raise InvalidMovieException: a move does not apply; the message carries its line number
        """
        diagram = start if start is not None else self.start
        if diagram is None:
            raise InvalidMovieException("Movie has no start diagram")
        steps = []
        for move in self.moves:
            try:
                step = apply_move(diagram, move)
            except InvalidDiagramException as exc:
                raise InvalidMovieException(f"{move}: {exc}", move.line) from exc
            logger.debug("Movie step %s", step)
            steps.append(step)
            diagram = step.after
        return steps

    def frames(self, start: OrientedDiagram | None = None) -> list[OrientedDiagram]:
        steps = self.rewrites(start)
        first = start if start is not None else self.start
        return [first] + [s.after for s in steps]  # type: ignore

    def counts(self) -> dict[str, int]:
        counts = {kind: 0 for kind in MovieScript.KINDS}
        for move in self.moves:
            counts[move.kind] += 1
        return counts

    def euler_characteristic(self) -> int:
        """! Euler characteristic of the surface traced by the movie"""
        counts = self.counts()
        return counts["birth"] + counts["death"] - counts["saddle"]

    def genus(self) -> int | None:
        """! Genus of the traced surface, assuming it is connected with one boundary circle at each end"""
        chi = self.euler_characteristic()
        if chi > 0 or chi % 2:
            return None
        return -chi // 2

    def __str__(self):
        return "\n".join(str(m) for m in self.moves)


def apply_move(d: OrientedDiagram, move: Move) -> Rewrite:
    match move.kind:
        case "R1+":
            sign = move.options[0] if move.options else "p"
            side = move.options[1] if len(move.options) > 1 else "l"
            return rewriting.r1_insert(d, move.edges[0], sign, side)
        case "R1-":
            return rewriting.r1_remove(d, move.crossings[0])
        case "R2+":
            return rewriting.r2_insert(d, move.edges[0], move.edges[1])
        case "R2-":
            if move.crossings:
                return rewriting.r2_remove(d, move.crossings[0], move.crossings[1])
            return rewriting.r2_remove(d, *crossings_of_bigon(d, move.edges[0], move.edges[1]))
        case "R3":
            return rewriting.r3(d, *move.crossings)
        case "birth":
            return rewriting.birth(d)
        case "death":
            return rewriting.death(d, move.edges[0] if move.edges else None)
        case "saddle":
            return rewriting.saddle(d, move.edges[0], move.edges[1])
        case _:
            raise NotImplementedError(f"Unknown move {move.kind}")


def crossings_of_bigon(d: OrientedDiagram, e1: int, e2: int) -> tuple[int, int]:
    """! The two crossings where edges e1 and e2 both end"""
    at1 = {c for c, _ in d.occurrences.get(e1, [])}
    at2 = {c for c, _ in d.occurrences.get(e2, [])}
    common = sorted(at1 & at2)
    if len(common) != 2:
        raise InvalidDiagramException(f"Edges {e1} and {e2} do not bound a bigon")
    return common[0], common[1]
