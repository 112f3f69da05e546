import logging
from typing import Any

from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.io.DiagramParser import DiagramParser
from khlab.io.MovieParser import MovieParser
from khlab.diagram.MovieScript import MovieScript
from khlab.stages.Stage import Stage, StageCallable

logger = logging.getLogger(__name__)


class DiagramParserStage(Stage):
    """! Parse `pd` (PD text, file, module path or example name) into the `diagram` of the substages"""

    def __init__(
        self,
        list_of_callables: list[StageCallable],
        *,
        pd: str | OrientedDiagram,
        basepoint: int | None = None,
        mirror: bool = False,
        **kwargs: Any,
    ):
        super().__init__(list_of_callables, **kwargs)
        self.parser = DiagramParser(pd)
        self.basepoint = basepoint
        self.mirror = mirror

    def run(self):
        self.parser.run()
        diagram = self.parser.get_diagram()
        if self.mirror:
            diagram = diagram.mirror()
        if self.basepoint is not None:
            diagram = diagram.with_basepoint(self.basepoint)
        for report, extra_info in self.substage(diagram=diagram, basepoint=self.basepoint).run():
            yield report, extra_info


class MovieParserStage(Stage):
    """! Parse `movie` (text or file) into a MovieScript; a parsed `diagram` becomes its start when it has none"""

    def __init__(self, list_of_callables: list[StageCallable], *, movie: str | MovieScript, **kwargs: Any):
        super().__init__(list_of_callables, **kwargs)
        self.parser = MovieParser(movie)

    def run(self):
        self.parser.run()
        movie = self.parser.get_movie()
        diagram = self.kwargs.get("diagram")
        if movie.start is None and diagram is not None:
            movie = movie.with_start(diagram)
        for report, extra_info in self.substage(movie=movie).run():
            yield report, extra_info
