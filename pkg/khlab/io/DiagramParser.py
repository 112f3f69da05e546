import importlib
import logging
import os

from khlab.diagram.OrientedDiagram import InvalidDiagramException, OrientedDiagram
from khlab.io.PDParser import parse_pd

logger = logging.getLogger(__name__)


class DiagramParser:
    """! Turn PD text, a file, a module path or a named example into an OrientedDiagram"""

    def __init__(self, diagram: "str | OrientedDiagram") -> None:
        """
        @param diagram: PD text, path to a text file holding PD text, dotted module path exposing `diagram`,
        a supported example name, or an OrientedDiagram that is passed through
        """
        if isinstance(diagram, str):
            self.source = diagram
            self.diagram = None
        elif isinstance(diagram, OrientedDiagram):
            self.source = None
            self.diagram = diagram
        else:
            raise TypeError("Given diagram is neither a string nor an OrientedDiagram object.")

        self.supported_diagrams = {
            "unknot": "khlab.inputs.examples.diagrams.unknot",
            "hopf": "khlab.inputs.examples.diagrams.hopf",
            "trefoil": "khlab.inputs.examples.diagrams.trefoil_right",
            "trefoil_right": "khlab.inputs.examples.diagrams.trefoil_right",
            "trefoil_left": "khlab.inputs.examples.diagrams.trefoil_left",
            "figure_eight": "khlab.inputs.examples.diagrams.figure_eight",
            "kinked_unknot": "khlab.inputs.examples.diagrams.kinked_unknot",
            "double_kinked_unknot": "khlab.inputs.examples.diagrams.double_kinked_unknot",
            "unlink2": "khlab.inputs.examples.diagrams.unlink2",
            "cinquefoil": "khlab.inputs.examples.diagrams.cinquefoil",
        }

    def run(self):
        if self.diagram is not None:
            return
        assert self.source is not None
        text = self.source.strip()
        if looks_like_pd(text):
            self.diagram = parse_pd(text)
        elif os.path.isfile(text):
            self.diagram = self.parse_diagram_from_file(text)
        else:
            try:
                self.diagram = self.parse_diagram_from_module(text)
            except (ModuleNotFoundError, ValueError):
                try:
                    self.diagram = self.parse_supported_diagram(text)
                except KeyError:
                    raise InvalidDiagramException(
                        f"Provided diagram ({text}) is not PD text, a file, a valid module path, nor a supported example. "
                        f"Supported examples = {self.get_supported_diagrams()}"
                    )
        logger.info(f"Parsed diagram {self.diagram} with {self.diagram.n} crossings.")

    @staticmethod
    def parse_diagram_from_file(path: str) -> OrientedDiagram:
        with open(path, encoding="utf-8") as fp:
            lines = [line.strip() for line in fp if line.strip() and not line.strip().startswith("#")]
        if not lines:
            raise InvalidDiagramException(f"File {path} holds no diagram")
        return parse_pd(" ".join(lines))

    @staticmethod
    def parse_diagram_from_module(module_path: str) -> OrientedDiagram:
        module = importlib.import_module(module_path)
        return parse_pd(module.diagram)

    def parse_supported_diagram(self, name: str) -> OrientedDiagram:
        return self.parse_diagram_from_module(self.supported_diagrams[name])

    def get_diagram(self) -> OrientedDiagram:
        if self.diagram is None:
            self.run()
        assert self.diagram is not None
        return self.diagram

    def get_supported_diagrams(self):
        return list(self.supported_diagrams.keys())


def looks_like_pd(text: str) -> bool:
    tokens = text.split()
    return text.startswith("PD") or bool(tokens) and all(t == "U" or t.startswith(("U(", "bp=")) for t in tokens)


def load_diagram(diagram: "str | OrientedDiagram") -> OrientedDiagram:
    parser = DiagramParser(diagram)
    parser.run()
    return parser.get_diagram()
