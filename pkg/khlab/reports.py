"""Report objects yielded by the leaf stages, with their json, tsv and table renderings."""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any

from khlab.datatypes import Bigrading, Coefficient, Theory
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.homology.HomologyGroup import HomologyGroup
from khlab.utils import laurent_to_string

logger = logging.getLogger(__name__)


@dataclass
class HomologyReport:
    diagram: OrientedDiagram
    theory: Theory
    coefficient: Coefficient
    reduced: bool
    groups: dict[Bigrading, HomologyGroup]
    euler: dict[int, int]
    xi_action: dict[Bigrading, list[list[int]]] | None = None

    def __jsonrepr__(self):
        result: dict[str, Any] = {
            "diagram": self.diagram.to_pd(),
            "theory": str(self.theory),
            "coefficient": str(self.coefficient),
            "reduced": self.reduced,
            "bigradings": [self.groups[ij].__jsonrepr__() for ij in sorted(self.groups)],
            "euler": laurent_to_string(self.euler),
        }
        if self.xi_action is not None:
            result["xi_action"] = [{"i": i, "j": j, "matrix": m} for (i, j), m in sorted(self.xi_action.items())]
        return result

    def __simplejsonrepr__(self):
        return {ij_key(ij): g.describe() for ij, g in sorted(self.groups.items())}

    def to_tsv(self) -> str:
        lines = ["i\tj\trank\ttorsion"]
        for (i, j), g in sorted(self.groups.items()):
            lines.append(f"{i}\t{j}\t{g.rank}\t{','.join(str(t) for t in g.torsion)}")
        return "\n".join(lines) + "\n"

    def to_pretty(self) -> str:
        """! Fixed-width table, homological degree across and quantum grading down (highest first)"""
        if not self.groups:
            return "0\n"
        columns = sorted({i for i, _ in self.groups})
        rows = sorted({j for _, j in self.groups}, reverse=True)
        cells: dict[Bigrading, str] = defaultdict(str)
        for (i, j), g in self.groups.items():
            cells[(i, j)] = g.describe()
        width = max(4, max(len(c) for c in cells.values()))
        header = "j\\i".rjust(5) + "".join(str(i).rjust(width + 2) for i in columns)
        lines = [header]
        for j in rows:
            lines.append(str(j).rjust(5) + "".join(cells[(i, j)].rjust(width + 2) for i in columns))
        return "\n".join(lines) + "\n"

    def __str__(self):
        return f"HomologyReport({self.theory}, {self.coefficient}, reduced={self.reduced}, {self.diagram})"


def ij_key(ij: Bigrading) -> str:
    return f"{ij[0]},{ij[1]}"


@dataclass
class BurnsideReport:
    diagram: OrientedDiagram
    objects: int
    edges: int
    squares: int
    ladybugs: int
    hexagons: int
    transpose_match: bool
    doubling_match: bool
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.transpose_match and self.doubling_match and not self.failures

    def __jsonrepr__(self):
        return {
            "objects": self.objects,
            "edges": self.edges,
            "squares": self.squares,
            "ladybugs": self.ladybugs,
            "hexagons": self.hexagons,
            "transpose_match": self.transpose_match,
            "doubling_match": self.doubling_match,
        }

    def __str__(self):
        return f"BurnsideReport({self.diagram}, {self.hexagons} hexagons, passed={self.passed})"


@dataclass
class SuiteResult:
    passed: bool = True
    checked: int = 0
    details: list[str] = field(default_factory=list)

    def add(self, passed: bool, checked: int, detail: str | None = None):
        self.passed = self.passed and passed
        self.checked += checked
        if detail and not passed:
            self.details.append(detail)

    def __jsonrepr__(self):
        return {"passed": self.passed, "checked": self.checked, "details": self.details}


@dataclass
class VerificationReport:
    name: str
    suites: dict[str, SuiteResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites.values())

    def suite(self, name: str) -> SuiteResult:
        return self.suites.setdefault(name, SuiteResult())

    def merge(self, other: "VerificationReport"):
        """! Add the counts of another report, failures prefixed by its name"""
        for name, result in other.suites.items():
            mine = self.suite(name)
            mine.passed = mine.passed and result.passed
            mine.checked += result.checked
            mine.details += [f"{other.name}: {d}" for d in result.details]

    def __jsonrepr__(self):
        return {"suites": {name: s.__jsonrepr__() for name, s in sorted(self.suites.items())}, "passed": self.passed}

    def __str__(self):
        return f"VerificationReport({self.name}, passed={self.passed})"
