"""Checks that a signed Burnside functor is coherent and that its totalization is the dual odd complex."""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable

import numpy as np
from tqdm import tqdm

from khlab.burnside.SignedBurnsideFunctor import (
    SignedBurnsideFunctor,
    coproduct,
    double,
    forget_signs,
    quantum_summands,
    sign_reassign,
    subfunctor,
    totalize,
)
from khlab.complexes.ChainMap import ChainMap, label_map
from khlab.complexes.khovanov import build_complex
from khlab.complexes.sequences import CheckReport, ShortExactSequence
from khlab.datatypes import Constants, Theory

logger = logging.getLogger(__name__)


@dataclass
class CoherenceReport:
    """! Outcome of walking the hexagons of every 3-dimensional face"""

    three_faces: int = 0
    hexagons: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __jsonrepr__(self):
        return {"three_faces": self.three_faces, "hexagons": self.hexagons, "failures": self.failures}


def three_faces(n: int) -> list[tuple[int, tuple[int, int, int]]]:
    """! Every 3-dimensional face as its top vertex and the three coordinates it spans"""
    result = []
    for u in range(1 << n):
        ones = [k for k in range(n) if u >> k & 1]
        result.extend((u, coords) for coords in combinations(ones, 3))
    return result


def _path(u: int, order: tuple[int, ...]) -> list[int]:
    vertices = [u]
    for k in order:
        vertices.append(vertices[-1] ^ (1 << k))
    return vertices


def check_hexagons(f: SignedBurnsideFunctor, show_progress_bar: bool = False) -> CoherenceReport:
    """! Compose the six square matchings around every hexagon and require the identity.

    Paths through a 3-face are orders of its coordinates; a path element is a triple of edge elements.
    Going round swaps the first two and the last two coordinates alternately.
    """
    report = CoherenceReport()
    cubes = three_faces(f.n)
    for u, coords in tqdm(cubes, desc="3-faces") if show_progress_bar else cubes:
        report.three_faces += 1
        first, second, third = (f.edges[(a, b)] for a, b in zip(_path(u, coords), _path(u, coords)[1:]))
        starts = [(a, b, c) for (a, b), c in first.then(second).then(third).elements]
        for start in starts:
            order, element = coords, start
            for step in range(6):
                vertices = _path(u, order)
                if step % 2 == 0:
                    square = f.square_at[(vertices[0], vertices[2])]
                    swapped = f.squares[square].get((element[0], element[1]))
                    order = (order[1], order[0], order[2])
                    element = None if swapped is None else (*swapped, element[2])
                else:
                    square = f.square_at[(vertices[1], vertices[3])]
                    swapped = f.squares[square].get((element[1], element[2]))
                    order = (order[0], order[2], order[1])
                    element = None if swapped is None else (element[0], *swapped)
                if element is None:
                    break
            report.hexagons += 1
            if element != start:
                report.failures.append(f"hexagon at {u:b} on coordinates {coords} moves {start} to {element}")
    logger.info("Walked %d hexagons on %d 3-faces, %d failures", report.hexagons, report.three_faces, len(report.failures))
    return report


## Comparison with the Khovanov complexes
def _khovanov_dual(f: SignedBurnsideFunctor, theory: Theory):
    if f.diagram is None:
        raise ValueError(f"{f} does not remember its diagram")
    return build_complex(f.diagram, theory, cube=f.cube, epsilon=f.epsilon).transpose()


def transpose_check(f: SignedBurnsideFunctor) -> bool:
    """! Tot(F_o) equals the transpose of the odd complex built with the same edge assignment"""
    return totalize(f) == _khovanov_dual(f, Constants.ODD)


def doubling_check(f: SignedBurnsideFunctor) -> bool:
    """! Tot(𝒟F_o) equals the transpose of the unified complex on its doubled ℤ-basis"""
    return totalize(double(f)) == _khovanov_dual(f, Constants.UNIFIED)


def forgetful_check(f: SignedBurnsideFunctor) -> CheckReport:
    """! Forgetting signs gives the even functor: multiplicities equal the even differential's entries"""
    forgotten = totalize(forget_signs(f))
    even = _khovanov_dual(f, Constants.EVEN)
    report = CheckReport("forgetful")
    for i, j in even.bigradings():
        report.results[(i, j)] = forgotten.rank(i, j) == even.rank(i, j) and np.array_equal(
            np.abs(forgotten.differential(i, j)), np.abs(even.differential(i, j))
        )
    return report


def coproduct_check(f: SignedBurnsideFunctor) -> bool:
    """! Tot(F₁ ⊔ F₂) = Tot(F₁) ⊕ Tot(F₂) on a split of F by quantum grading"""
    summands = list(quantum_summands(f).values())
    if len(summands) < 2:
        return True
    low = summands[0]
    high = summands[1]
    for extra in summands[2:]:
        high = coproduct(high, extra, ("a", "b"))
    return totalize(coproduct(low, high)) == totalize(low).direct_sum(totalize(high))


## Sign reassignments and cofibrations
def reassignment_map(f: SignedBurnsideFunctor, zeta: dict[Hashable, int]) -> ChainMap:
    """! The basis sign change Tot(F) -> Tot(ηF), x ↦ ζ(x)x, verified to be a chain map"""
    g = sign_reassign(f, zeta)
    source, target = totalize(f), totalize(g)
    return label_map(source, target, {x: {x: zeta[x]} for x in f.vertex_of}, name="ζ").verify()


def cofibration_sequence(f: SignedBurnsideFunctor, selection: set[Hashable]) -> ShortExactSequence:
    """! Tot(G) -> Tot(F) -> Tot(H) for the cofibration pair of a closed selection"""
    sub, quotient = subfunctor(f, selection)
    whole = totalize(f)
    inclusion = label_map(totalize(sub), whole, {x: {x: 1} for x in sub.vertex_of}, name="ι")
    projection = label_map(whole, totalize(quotient), {x: {x: 1} for x in quotient.vertex_of}, name="π")
    return ShortExactSequence(inclusion.verify(), projection.verify())


def _basepoint_membership(f: SignedBurnsideFunctor) -> dict[Hashable, bool]:
    d = f.diagram
    if d is None or f.cube is None or d.basepoint is None:
        raise ValueError(f"Reduced functors of {f} need a diagram with a basepoint")
    result = {}
    for g in f.vertex_of:
        v, monomial = g
        result[g] = f.cube.resolution(v).basepoint_circle() in monomial
    return result


def reduced_functors(f: SignedBurnsideFunctor) -> tuple[SignedBurnsideFunctor, SignedBurnsideFunctor]:
    """! (F̃₊, F̃₋): the subfunctor on generators avoiding the basepoint circle and its quotient"""
    contains = _basepoint_membership(f)
    return subfunctor(f, {g for g, inside in contains.items() if not inside})


def reduced_sign_check(f: SignedBurnsideFunctor) -> CheckReport:
    """! The bijection F̃₋ -> F̃₊ dropping the basepoint circle preserves every element and its sign.

    The basepoint circle carries the largest circle id, so it is the last factor of every monomial it
    divides. Results are keyed by cube edge.
    """
    plus, minus = reduced_functors(f)
    report = CheckReport("reduced signs")

    def strip(g: Hashable) -> Hashable:
        v, monomial = g
        return v, monomial[:-1]

    for e, correspondence in minus.edges.items():
        image = {(strip(s), strip(t)): sign for s, t, sign in correspondence.elements.values()}
        target = {(s, t): sign for s, t, sign in plus.edges[e].elements.values()}
        report.results[e] = image == target
    return report
