import logging
from typing import Any

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.invariants.jones import jones_report
from khlab.stages.Stage import Stage, StageCallable

logger = logging.getLogger(__name__)


class JonesStage(Stage):
    """! Leaf stage comparing the Kauffman bracket state sum with the Euler characteristic"""

    def __init__(
        self,
        list_of_callables: list[StageCallable],
        *,
        diagram: OrientedDiagram,
        complex: BigradedComplex | None = None,
        **kwargs: Any,
    ):
        super().__init__(list_of_callables, **kwargs)
        self.diagram = diagram
        self.complex = complex

    def is_leaf(self) -> bool:
        return True

    def run(self):
        report = jones_report(self.diagram, self.complex)
        logger.info(f"Jones polynomial of {self.diagram}: {report.__jsonrepr__()['jones']}, match {report.match}")
        yield report, None
