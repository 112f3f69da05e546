import logging
from dataclasses import dataclass, field

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.ChainMap import identity_map
from khlab.complexes.khovanov import build_complex
from khlab.datatypes import Constants, Theory
from khlab.diagram.MovieScript import MovieScript
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.diagram.rewriting import Rewrite
from khlab.moves.ChainMapWitness import ChainMapWitness
from khlab.moves.cobordism import birth_step, death_step, saddle_step
from khlab.moves.reidemeister import reidemeister_step

logger = logging.getLogger(__name__)


def step_map(source: BigradedComplex, step: Rewrite) -> ChainMapWitness:
    """! Chain map of one movie step out of the given complex of step.before"""
    match step.kind:
        case "R1+" | "R1-" | "R2+" | "R2-" | "R3":
            return reidemeister_step(source, step)
        case "birth":
            return birth_step(source, step)
        case "death":
            return death_step(source, step)
        case "saddle":
            return saddle_step(source, step)
        case _:
            raise NotImplementedError(f"Unknown movie step {step.kind}")


@dataclass
class MovieReport:
    """! Outcome of running a movie through the chain maps"""

    witness: ChainMapWitness
    steps: list[ChainMapWitness] = field(default_factory=list)
    genus: int | None = None
    euler_characteristic: int = 0
    mod2_matches_even: bool | None = None

    @property
    def degree(self) -> tuple[int, int]:
        return self.witness.shift

    @property
    def dual(self) -> ChainMapWitness:
        """! The movie map between the dual complexes, from the last frame back to the first"""
        return self.witness.dual("movie")

    @property
    def dual_degree(self) -> tuple[int, int]:
        di, dj = self.degree
        return -di, -dj

    def __jsonrepr__(self):
        return {
            "steps": [s.__jsonrepr__() for s in self.steps],
            "degree": list(self.degree),
            "dual_degree": list(self.dual_degree),
            "chain_map": self.witness.is_chain_map,
            "mod2_matches_even": self.mod2_matches_even,
            "genus": self.genus,
            "euler_characteristic": self.euler_characteristic,
        }


def movie_map(
    script: MovieScript, start: OrientedDiagram | None = None, theory: Theory | str = Constants.ODD
) -> MovieReport:
    """! Compose the maps of every step, each one starting from the complex the previous one ended in.
    @raise InvalidMovieException: a move does not apply to its frame
    """
    steps = script.rewrites(start)
    first = start if start is not None else script.start
    source = build_complex(first, theory)  # type: ignore[arg-type]
    total = ChainMapWitness(identity_map(source), "movie", True, True)
    witnesses = []
    current = source
    for step in steps:
        w = step_map(current, step)
        logger.debug("Movie step %s: %s", step.kind, w)
        witnesses.append(w)
        total = total.then(w, "movie")
        current = w.target
    total.parts = witnesses
    report = MovieReport(total, witnesses, script.genus(), script.euler_characteristic())
    logger.info("Movie of %d steps has degree %s, chain map %s", len(steps), report.degree, total.is_chain_map)
    return report


def movie_mod2_check(
    script: MovieScript, start: OrientedDiagram | None = None, odd: MovieReport | None = None
) -> bool | None:
    """! The odd movie map reduces mod 2 to the even one; None when minimal models were involved"""
    odd = odd or movie_map(script, start, Constants.ODD)
    even = movie_map(script, start, Constants.EVEN)
    if odd.witness.canonical or even.witness.canonical:
        return None
    return odd.witness.reduce_mod2().chain_map.equals(even.witness.reduce_mod2().chain_map)


def cobordism_report(script: MovieScript, start: OrientedDiagram | None = None, theory: Theory | str = Constants.ODD):
    theory = Theory.parse_user_input(theory)
    report = movie_map(script, start, theory)
    if theory == Constants.ODD:
        report.mod2_matches_even = movie_mod2_check(script, start, report)
    return report
