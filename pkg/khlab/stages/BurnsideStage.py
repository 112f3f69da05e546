import logging
from typing import Any

from khlab.burnside.coherence import check_hexagons, doubling_check, transpose_check
from khlab.burnside.SignedBurnsideFunctor import build_functor
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.reports import BurnsideReport
from khlab.stages.Stage import Stage, StageCallable

logger = logging.getLogger(__name__)


class BurnsideStage(Stage):
    """! Leaf stage building the signed Burnside functor and walking its hexagons"""

    def __init__(
        self,
        list_of_callables: list[StageCallable],
        *,
        diagram: OrientedDiagram,
        show_progress_bar: bool = False,
        **kwargs: Any,
    ):
        super().__init__(list_of_callables, **kwargs)
        self.diagram = diagram
        self.show_progress_bar = show_progress_bar

    def is_leaf(self) -> bool:
        return True

    def run(self):
        f = build_functor(self.diagram, show_progress_bar=self.show_progress_bar)
        hexagons = check_hexagons(f, self.show_progress_bar)
        report = BurnsideReport(
            self.diagram,
            f.number_of_objects(),
            f.number_of_elements(),
            len(f.squares),
            f.ladybugs,
            hexagons.hexagons,
            transpose_check(f),
            doubling_check(f),
            hexagons.failures,
        )
        logger.info(f"Verified {report.hexagons} hexagons of {f.name}: passed {report.passed}")
        yield report, None
