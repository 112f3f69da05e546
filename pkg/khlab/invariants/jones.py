"""Kauffman bracket state sum, kept independent from the cube of resolutions.

Loops of a state are counted with a union-find over edge labels, so a mismatch with the Euler
characteristic of the Khovanov complex points at the complex and not at a shared helper.
"""

import logging
from dataclasses import dataclass
from itertools import product

import sympy
from networkx.utils import UnionFind
from tqdm import tqdm

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.khovanov import build_complex
from khlab.datatypes import Constants
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.homology.homology import euler_from_homology, homology
from khlab.utils import laurent_to_string

logger = logging.getLogger(__name__)

q = sympy.Symbol("q")


def laurent_coefficients(expression: sympy.Expr) -> dict[int, int]:
    """! {exponent: coefficient} of a Laurent polynomial in q"""
    result: dict[int, int] = {}
    for term in sympy.Add.make_args(sympy.expand(expression)):
        coefficient, power = term.as_coeff_exponent(q)
        if coefficient != 0:
            result[int(power)] = result.get(int(power), 0) + int(coefficient)
    return {e: c for e, c in result.items() if c}


def state_loops(d: OrientedDiagram, state: tuple[int, ...]) -> int:
    """! Number of loops of the smoothing that resolves crossing k in state[k]"""
    loops = UnionFind(d.edges)
    for x, s in zip(d.crossings, state):
        a, b, c, e = x.ends
        # The incoming under-strand a meets b in the 0-smoothing and e in the 1-smoothing
        pairs = ((a, b), (c, e)) if s == 0 else ((a, e), (b, c))
        for left, right in pairs:
            loops.union(left, right)
    return len(list(loops.to_sets()))


def kauffman_bracket(d: OrientedDiagram, show_progress_bar: bool = False) -> sympy.Expr:
    """! ⟨D⟩ = Σ over states of (-q)^{#1-smoothings} (q + q⁻¹)^{#loops}"""
    states = list(product((0, 1), repeat=d.n))
    total = sympy.Integer(0)
    for state in tqdm(states, desc="States") if show_progress_bar else states:
        total += (-q) ** sum(state) * (q + 1 / q) ** state_loops(d, state)
    return sympy.expand(total)


def jones_polynomial(d: OrientedDiagram, normalized: bool = False) -> sympy.Expr:
    """! Unnormalized Jones polynomial (-1)^{n₋} q^{n₊ - 2n₋} ⟨D⟩; divided by q + q⁻¹ when normalized"""
    result = sympy.expand((-1) ** d.n_minus * q ** (d.n_plus - 2 * d.n_minus) * kauffman_bracket(d))
    if normalized:
        result = sympy.expand(sympy.cancel(result / (q + 1 / q)))
    return result


@dataclass
class JonesReport:
    jones: dict[int, int]
    euler: dict[int, int]
    bracket: dict[int, int]
    euler_from_homology: dict[int, int] | None = None

    @property
    def match(self) -> bool:
        return self.jones == self.euler and self.euler_from_homology in (None, self.euler)

    def __jsonrepr__(self):
        return {
            "jones": laurent_to_string(self.jones),
            "euler": laurent_to_string(self.euler),
            "bracket": laurent_to_string(self.bracket),
            "match": self.match,
        }


def jones_report(d: OrientedDiagram, c: BigradedComplex | None = None, with_homology: bool = False) -> JonesReport:
    """! Jones polynomial from the state sum against the Euler characteristic of the Khovanov complex"""
    c = c or build_complex(d, Constants.EVEN)
    report = JonesReport(
        laurent_coefficients(jones_polynomial(d)),
        c.euler_characteristic(),
        laurent_coefficients(kauffman_bracket(d)),
    )
    if with_homology:
        report.euler_from_homology = euler_from_homology(homology(c, Constants.Z))
    if not report.match:
        logger.warning("Jones polynomial %s of %s differs from Euler characteristic %s", report.jones, d, report.euler)
    return report
