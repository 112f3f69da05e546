import logging
from typing import Any

from khlab.datatypes import Theory
from khlab.diagram.MovieScript import MovieScript
from khlab.moves.movie import cobordism_report
from khlab.stages.Stage import Stage, StageCallable

logger = logging.getLogger(__name__)


class CobordismStage(Stage):
    """! Leaf stage running a movie through the chain maps of its moves"""

    def __init__(
        self,
        list_of_callables: list[StageCallable],
        *,
        movie: MovieScript,
        theory: str | Theory = "odd",
        **kwargs: Any,
    ):
        super().__init__(list_of_callables, **kwargs)
        self.movie = movie
        self.theory = Theory.parse_user_input(theory)

    def is_leaf(self) -> bool:
        return True

    def run(self):
        report = cobordism_report(self.movie, theory=self.theory)
        logger.info(f"Movie of {len(self.movie)} moves: degree {report.degree}, chain map {report.witness.is_chain_map}")
        yield report, None
