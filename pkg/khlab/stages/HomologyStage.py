import logging
from typing import Any

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.datatypes import Coefficient, Constants
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.homology.homology import euler_from_homology, homology, xi_action_on_homology
from khlab.reports import HomologyReport
from khlab.stages.Stage import Stage, StageCallable

logger = logging.getLogger(__name__)


class HomologyStage(Stage):
    """! Leaf stage computing the bigraded homology of `complex`"""

    def __init__(
        self,
        list_of_callables: list[StageCallable],
        *,
        diagram: OrientedDiagram,
        complex: BigradedComplex,
        coeff: str | Coefficient = "Z",
        jobs: int = 1,
        reduced: bool = False,
        show_progress_bar: bool = False,
        **kwargs: Any,
    ):
        super().__init__(list_of_callables, **kwargs)
        self.diagram = diagram
        self.complex = complex
        self.coefficient = Coefficient.parse_user_input(coeff)
        self.jobs = jobs
        self.reduced = reduced
        self.show_progress_bar = show_progress_bar

    def is_leaf(self) -> bool:
        return True

    def run(self):
        c = self.complex
        if c.theory == Constants.UNIFIED and self.coefficient != Constants.Z:
            raise ValueError("The unified theory is computed over ℤ only")
        groups = homology(c, self.coefficient, jobs=self.jobs, show_progress_bar=self.show_progress_bar)
        report = HomologyReport(self.diagram, c.theory, self.coefficient, self.reduced, groups, euler_from_homology(groups))
        if c.theory == Constants.UNIFIED:
            report.xi_action = {}
            for (i, j), g in groups.items():
                free = slice(len(g.torsion), g.number_of_generators)
                report.xi_action[(i, j)] = [[int(x) for x in row] for row in xi_action_on_homology(c, i, j)[free, free]]
        logger.info(f"Homology of {self.diagram}: {', '.join(str(g) for g in groups.values()) or '0'}")
        yield report, None
