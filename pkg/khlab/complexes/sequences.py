"""Relations between the even, odd and unified complexes of one diagram, and between reduced and unreduced ones."""

import logging
from dataclasses import dataclass, field
import numpy as np

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.ChainMap import ChainMap, label_map
from khlab.complexes.khovanov import build_complex, reduced_quotient, reduced_subcomplex
from khlab.datatypes import Bigrading, Constants
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.homology.homology import homology
from khlab.homology.smith import invariant_factors
from khlab.resolution.ResolutionCube import ResolutionCube

logger = logging.getLogger(__name__)


@dataclass
class CheckReport:
    """! Outcome of a per-bigrading verification"""

    name: str
    results: dict[Bigrading, bool] = field(default_factory=dict)
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    @property
    def checked(self) -> int:
        return len(self.results)

    def failures(self) -> list[Bigrading]:
        return [ij for ij, ok in self.results.items() if not ok]

    def __jsonrepr__(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [list(ij) for ij in self.failures()],
            "details": self.details,
        }


def theory_complexes(d: OrientedDiagram, *theories) -> list[BigradedComplex]:
    """! Complexes of several theories sharing one cube of resolutions and one edge assignment"""
    cube = ResolutionCube(d)
    epsilon = cube.edge_assignment()
    return [build_complex(d, t, cube=cube, epsilon=epsilon) for t in theories]


def _specialization(unified: BigradedComplex, target: BigradedComplex, xi: int, name: str) -> ChainMap:
    """! (p, v, m) ↦ ξ^p (v, m) with ξ = xi"""
    images = {g: {g[1:]: xi ** g[0]} for gens in unified.generators.values() for g in gens}
    return label_map(unified, target, images, name=name)


def _multiplication(source: BigradedComplex, unified: BigradedComplex, xi: int, name: str) -> ChainMap:
    """! g ↦ (1 + xi·ξ) g on the doubled basis"""
    images = {g: {(0, *g): 1, (1, *g): xi} for gens in source.generators.values() for g in gens}
    return label_map(source, unified, images, name=name)


def unified_pullback_check(d: OrientedDiagram) -> CheckReport:
    """! Kc_u is the pullback {(a, b) ∈ Kc_e ⊕ Kc_o : a ≡ b mod 2} through m + nξ ↦ (m + n, m - n).

    Per bigrading: the map commutes with the differentials and its image is exactly the congruence
    sublattice, i.e. every column is congruent mod 2 and the invariant factors are r ones and r twos.
    """
    unified, even, odd = theory_complexes(d, Constants.UNIFIED, Constants.EVEN, Constants.ODD)
    to_even = _specialization(unified, even, 1, "ξ=1")
    to_odd = _specialization(unified, odd, -1, "ξ=-1")
    bad = set(to_even.failures()) | set(to_odd.failures())
    report = CheckReport("unified pullback")
    for i, j in unified.bigradings():
        stacked = np.vstack([to_even.block(i, j), to_odd.block(i, j)])
        r = even.rank(i, j)
        congruent = not ((stacked[:r] - stacked[r:]) % 2).any()
        factors = invariant_factors(stacked)
        lattice = len(factors) == 2 * r and factors.count(2) == r and factors.count(1) == r
        report.results[(i, j)] = (i, j) not in bad and congruent and lattice
    logger.info("Pullback check of %s: %s", d, "pass" if report.passed else report.failures())
    return report


@dataclass
class ShortExactSequence:
    """! 0 -> A -> B -> C -> 0 given by two chain maps"""

    first: ChainMap
    second: ChainMap

    def exactness(self) -> CheckReport:
        """! Both maps are chain maps, the composite vanishes, the first map is a split injection of rank
        rank A and the second is onto with kernel of rank rank B - rank C"""
        report = CheckReport(f"{self.first.name} / {self.second.name}")
        f, g = self.first, self.second
        bad = set(f.failures()) | set(g.failures())
        for i, j in f.target.bigradings():
            a, b = f.block(i, j), g.block(i, j)
            composite_zero = not (b @ a).any() if a.size and b.size else True
            injective = invariant_factors(a) == [1] * f.source.rank(i, j)
            onto = invariant_factors(b) == [1] * g.target.rank(i, j)
            middle = f.source.rank(i, j) + g.target.rank(i, j) == f.target.rank(i, j)
            report.results[(i, j)] = (i, j) not in bad and composite_zero and injective and onto and middle
        return report


def ses_even_unified_odd(d: OrientedDiagram, variant: str = "e-u-o") -> ShortExactSequence:
    """! 0 -> Kc_e -(1+ξ)-> Kc_u -(ξ=-1)-> Kc_o -> 0, or with variant `o-u-e` the sequence with 1-ξ and ξ=1"""
    unified, even, odd = theory_complexes(d, Constants.UNIFIED, Constants.EVEN, Constants.ODD)
    match variant:
        case "e-u-o":
            return ShortExactSequence(
                _multiplication(even, unified, 1, "1+ξ").verify(), _specialization(unified, odd, -1, "ξ=-1").verify()
            )
        case "o-u-e":
            return ShortExactSequence(
                _multiplication(odd, unified, -1, "1-ξ").verify(), _specialization(unified, even, 1, "ξ=1").verify()
            )
        case _:
            raise NotImplementedError(f"Unknown short exact sequence {variant}, use e-u-o or o-u-e")


def _same_group(groups: dict, ij: Bigrading) -> tuple[int, list[int]]:
    g = groups.get(ij)
    return (g.rank, list(g.torsion)) if g else (0, [])


def odd_splitting_check(d: OrientedDiagram, basepoint: int | None = None) -> CheckReport:
    """! Kh_o^{i,j} ≅ K̃h_o^{i,j-1} ⊕ K̃h_o^{i,j+1}, compared through ranks and invariant factors"""
    if basepoint is not None:
        d = d.with_basepoint(basepoint)
    if not d.edges:
        return CheckReport("odd splitting")
    if d.basepoint is None:
        d = d.with_basepoint(min(d.edges))
    odd = build_complex(d, Constants.ODD)
    full = homology(odd)
    reduced = homology(reduced_subcomplex(odd))
    report = CheckReport("odd splitting")
    bigradings = set(full) | {(i, j + 1) for i, j in reduced} | {(i, j - 1) for i, j in reduced}
    for i, j in sorted(bigradings):
        rank, torsion = _same_group(full, (i, j))
        r1, t1 = _same_group(reduced, (i, j - 1))
        r2, t2 = _same_group(reduced, (i, j + 1))
        report.results[(i, j)] = rank == r1 + r2 and _elementary(torsion) == _elementary(t1 + t2)
    return report


def _elementary(torsion: list[int]) -> list[int]:
    """! Prime power decomposition of a torsion group, for comparing direct sums"""
    result = []
    for t in torsion:
        p = 2
        while t > 1:
            power = 1
            while t % p == 0:
                t //= p
                power *= p
            if power > 1:
                result.append(power)
            p += 1
    return sorted(result)


def reduced_ses_check(c: BigradedComplex, basepoint: int | None = None) -> CheckReport:
    """! K̃c^{*,j+1} -> Kc^{*,j} -> K̃c^{*,j-1}: the reduced generators span a subcomplex and the ranks add up"""
    sub = reduced_subcomplex(c, basepoint)
    quotient = reduced_quotient(c, basepoint)
    circles_in = {g for gens in sub.generators.values() for g in gens}
    report = CheckReport("reduced short exact sequence")
    closed = c.is_closed(lambda g: g in circles_in)
    if not closed:
        report.details.append("reduced generators do not span a subcomplex")
    for i, j in c.bigradings():
        report.results[(i, j)] = closed and sub.rank(i, j + 1) + quotient.rank(i, j - 1) == c.rank(i, j)
    return report


def mod2_agreement(d: OrientedDiagram) -> CheckReport:
    """! The even and odd complexes reduce to the same matrices mod 2"""
    even, odd = theory_complexes(d, Constants.EVEN, Constants.ODD)
    report = CheckReport("mod 2 agreement")
    for i, j in even.bigradings():
        report.results[(i, j)] = np.array_equal(even.differential(i, j) % 2, odd.differential(i, j) % 2)
    return report

