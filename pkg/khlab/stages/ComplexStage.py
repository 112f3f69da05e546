import logging
from typing import Any

from khlab.complexes.khovanov import build_complex, reduced_subcomplex
from khlab.datatypes import Theory
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.stages.Stage import Stage, StageCallable

logger = logging.getLogger(__name__)


class ComplexStage(Stage):
    """! Build the Khovanov complex of `diagram` in `theory`, reduced at the basepoint on request"""

    def __init__(
        self,
        list_of_callables: list[StageCallable],
        *,
        diagram: OrientedDiagram,
        theory: str | Theory = "even",
        reduced: bool = False,
        basepoint: int | None = None,
        show_progress_bar: bool = False,
        **kwargs: Any,
    ):
        super().__init__(list_of_callables, **kwargs)
        self.diagram = diagram
        self.theory = Theory.parse_user_input(theory)
        self.reduced = reduced
        self.basepoint = basepoint
        self.show_progress_bar = show_progress_bar

    def run(self):
        c = build_complex(self.diagram, self.theory, show_progress_bar=self.show_progress_bar)
        if self.reduced:
            c = reduced_subcomplex(c, self.basepoint)
        logger.info(f"Built {c} with {c.total_rank()} generators.")
        sub_stage = self.substage(
            diagram=self.diagram, complex=c, show_progress_bar=self.show_progress_bar, reduced=self.reduced
        )
        for report, extra_info in sub_stage.run():
            yield report, extra_info
