import logging
from typing import Any

from khlab.concordance.invariants import concordance_report
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.stages.Stage import Stage, StageCallable

logger = logging.getLogger(__name__)


class ConcordanceStage(Stage):
    """! Leaf stage computing s and the Bockstein-refined invariants of a knot"""

    def __init__(
        self,
        list_of_callables: list[StageCallable],
        *,
        diagram: OrientedDiagram,
        alpha: str = "bockstein_even",
        **kwargs: Any,
    ):
        super().__init__(list_of_callables, **kwargs)
        self.diagram = diagram
        self.alpha = alpha

    def is_leaf(self) -> bool:
        return True

    def run(self):
        report = concordance_report(self.diagram, self.alpha)
        logger.info(f"Concordance invariants of {self.diagram}: {report.__jsonrepr__()}")
        yield report, None
