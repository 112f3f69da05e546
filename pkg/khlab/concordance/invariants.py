"""Concordance invariants read off the Bar-Natan filtration.

s comes from the levels q at which H*(F_q) still reaches the whole Bar-Natan homology. The refined
invariants also ask that the level-q part of a class be hit by a stable cohomology operation α from
Kh^{-n,q}: q is α-half-full when some such class survives nontrivially to the whole homology, and
α-full when two such classes survive to a basis of it.
"""

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.khovanov import build_complex
from khlab.concordance.barnatan import barnatan_complex
from khlab.concordance.FilteredComplex import FilteredComplex
from khlab.datatypes import Constants
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.homology.homology import bockstein, homology_at
from khlab.homology.linalg import f2_matmul, f2_nullspace, to_f2

logger = logging.getLogger(__name__)

# (complex, i, j) -> matrix of Kh^{i,j}(𝔽₂) -> Kh^{i+n,j}(𝔽₂) in the homology bases of homology_at
Operation = Callable[[BigradedComplex, int, int], np.ndarray]

ALPHAS = ("bockstein_even", "bockstein_odd")


class SInvariantMismatchException(Exception):
    pass


def s_levels(c: FilteredComplex) -> dict[int, int]:
    """! Dimension of the image of H*(F_q) in the whole homology, for every q of the search range"""
    return {q: sum(c.image_dimension(i, q) for i in c.homological_degrees()) for q in c.search_range()}


def s_invariant(d: OrientedDiagram, c: FilteredComplex | None = None) -> int:
    """! s = max{q : H(F_q) -> H surjective} + 1, checked against max{q : H(F_q) -> H nonzero} - 1
    @raise NotAKnotException: d is a link
    @raise SInvariantMismatchException: the two formulas give different values
    """
    c = c or barnatan_complex(d)
    total = c.homology_dimension()
    if total != 2:
        logger.warning("Bar-Natan homology of %s has dimension %d", d, total)
    images = s_levels(c)
    surjective = max(q for q, dim in images.items() if dim == total) + 1
    nonzero = max(q for q, dim in images.items() if dim > 0) - 1
    if surjective != nonzero:
        raise SInvariantMismatchException(f"s of {d}: {surjective} from surjectivity, {nonzero} from nonvanishing")
    logger.info("s(%s) = %d", d, surjective)
    return surjective


## α-refinements
def operation_of(alpha: str) -> tuple[Operation, str, int]:
    """! (operation, theory of the integral complex it is computed on, degree n) for an α name"""
    match alpha:
        case "bockstein_even":
            return bockstein, "even", 1
        case "bockstein_odd":
            return bockstein, "odd", 1
        case _:
            raise NotImplementedError(f"Unknown operation {alpha}; supported are {', '.join(ALPHAS)}")


def operation_image(integral: BigradedComplex, operation: Operation, n: int, q: int) -> np.ndarray:
    """! Cycles of Kc^{0,q}(𝔽₂) whose classes are in the image of α from Kh^{-n,q}, boundaries included"""
    rows = integral.rank(0, q)
    columns = [to_f2(integral.differential(-1, q))] if integral.rank(-1, q) else []
    source = homology_at(integral, -n, q, Constants.F2)
    target = homology_at(integral, 0, q, Constants.F2)
    if source.number_of_generators and target.number_of_generators:
        images = operation(integral, -n, q)
        columns.append(to_f2(target.generators @ images))  # type: ignore[operator]
    if not columns:
        return np.zeros((rows, 0), dtype=np.uint8)
    return np.hstack(columns)


def fullness(c: FilteredComplex, integral: BigradedComplex, operation: Operation, n: int, q: int) -> int:
    """! Dimension of the space of classes ā ∈ H⁰(F_{-∞}) coming from some a ∈ H⁰(F_q) whose level-q part
    lies in the image of α. q is half-full when it is at least 1 and full when it is at least 2.
    """
    z = c.cycles(0, q)
    if z.shape[1] == 0:
        return 0
    position = {g: k for k, g in enumerate(c.generators.get(0, []))}
    rows = [position[g] for g in integral.generators.get((0, q), [])]
    image = operation_image(integral, operation, n, q)
    # a = z·t with (z·t)|_q = image·s for some s
    system = np.hstack([z[rows, :], image])
    kernel, _ = f2_nullspace(system, cols=system.shape[1])
    allowed = f2_matmul(z, kernel[: z.shape[1], :])
    return c.image_dimension(0, q, allowed)


@dataclass
class FullnessProfile:
    alpha: str
    dimensions: dict[int, int]

    def half_full(self) -> list[int]:
        return [q for q, dim in self.dimensions.items() if dim >= 1]

    def full(self) -> list[int]:
        return [q for q, dim in self.dimensions.items() if dim >= 2]

    @property
    def r_plus(self) -> int:
        return max(self.half_full()) + 1

    @property
    def s_plus(self) -> int:
        return max(self.full()) + 3


def fullness_profile(d: OrientedDiagram, alpha: str, c: FilteredComplex | None = None) -> FullnessProfile:
    operation, theory, n = operation_of(alpha)
    c = c or barnatan_complex(d)
    integral = build_complex(d, theory)
    dimensions = {q: fullness(c, integral, operation, n, q) for q in c.search_range()}
    logger.debug("%s fullness of %s: %s", alpha, d, dimensions)
    return FullnessProfile(alpha, dimensions)


def alpha_invariants(
    d: OrientedDiagram, alpha: str = "bockstein_even", c: FilteredComplex | None = None
) -> tuple[int, int, int, int]:
    """! (r⁺, s⁺, r⁻, s⁻) for α; the minus versions are minus the plus versions of the mirror
    @raise NotAKnotException: d is a link
    """
    plus = fullness_profile(d, alpha, c)
    minus = fullness_profile(d.mirror(), alpha)
    result = plus.r_plus, plus.s_plus, -minus.r_plus, -minus.s_plus
    logger.info("%s invariants of %s: r+ %d, s+ %d, r- %d, s- %d", alpha, d, *result)
    return result


## Reports
@dataclass
class ConcordanceReport:
    s: int
    r_plus: int
    s_plus: int
    r_minus: int
    s_minus: int
    alpha: str

    def slice_genus_bound(self) -> int:
        """! Largest lower bound on the four-ball genus the invariants give"""
        return max(abs(x) for x in (self.s, self.r_plus, self.s_plus, self.r_minus, self.s_minus)) // 2

    def __jsonrepr__(self):
        return {
            "s": self.s,
            "r_plus": self.r_plus,
            "s_plus": self.s_plus,
            "r_minus": self.r_minus,
            "s_minus": self.s_minus,
            "alpha": self.alpha,
        }


def concordance_report(d: OrientedDiagram, alpha: str = "bockstein_even") -> ConcordanceReport:
    c = barnatan_complex(d)
    s = s_invariant(d, c)
    r_plus, s_plus, r_minus, s_minus = alpha_invariants(d, alpha, c)
    return ConcordanceReport(s, r_plus, s_plus, r_minus, s_minus, alpha)
