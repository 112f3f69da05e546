import logging
from collections import defaultdict
from typing import Hashable

import numpy as np
from tqdm import tqdm

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.cube.Cochain import Cochain, faces
from khlab.cube.CubeVertex import standard_sign
from khlab.datatypes import Bigrading, Constants, Monomial, Theory
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.resolution.ResolutionCube import ResolutionCube, specialize_pair
from khlab.utils import popcount

logger = logging.getLogger(__name__)


def generator_bigrading(cube: ResolutionCube, v: int, monomial: Monomial) -> Bigrading:
    """! (i, j) of the Khovanov generator `monomial` at vertex v; unoriented diagrams count no negative crossings"""
    d = cube.diagram
    i = popcount(v) - d.n_minus
    j = cube.resolution(v).number_of_circles - 2 * len(monomial) + popcount(v) + d.n_plus - 2 * d.n_minus
    return i, j


def vertex_and_monomial(generator: Hashable) -> tuple[int, Monomial]:
    """! Strip the ξ-layer of a doubled unified generator"""
    return generator[-2], generator[-1]  # type: ignore


def build_complex(
    d: OrientedDiagram,
    theory: Theory | str = Constants.EVEN,
    *,
    cube: ResolutionCube | None = None,
    epsilon: Cochain | None = None,
    show_progress_bar: bool = False,
) -> BigradedComplex:
    """! Khovanov complex Kc of a diagram in the even, odd, unified or mod 2 theory.

    The differential from the generator at v to the generator at u ≥₁ v is (-1)^s(u,v) ξ^ε(u,v) times the
    edge map of the cube of resolutions, specialized to the theory.
    @param cube: cube of resolutions to reuse
    @param epsilon: edge assignment; solved from the face types when omitted
    """
    theory = Theory.parse_user_input(theory)
    cube = cube or ResolutionCube(d)
    if epsilon is None:
        epsilon = cube.edge_assignment()
    unified = theory == Constants.UNIFIED
    layers = (0, 1) if unified else (None,)

    generators: dict[Bigrading, list[Hashable]] = defaultdict(list)
    for v in range(1 << d.n):
        for monomial in cube.basis(v):
            ij = generator_bigrading(cube, v, monomial)
            generators[ij] += [(v, monomial) if p is None else (p, v, monomial) for p in layers]
    for gens in generators.values():
        gens.sort()
    position = {g: (ij, k) for ij, gens in generators.items() for k, g in enumerate(gens)}
    blocks: dict[Bigrading, np.ndarray] = {}

    def add(source: Hashable, target: Hashable, value: int):
        (i, j), col = position[source]
        (ti, tj), row = position[target]
        if (ti, tj) != (i + 1, j):
            raise AssertionError(f"Differential from {source} at {(i, j)} lands in {(ti, tj)}")
        if (i, j) not in blocks:
            blocks[(i, j)] = np.zeros((len(generators[(i + 1, j)]), len(generators[(i, j)])), dtype=np.int64)
        blocks[(i, j)][row, col] += value

    edges = faces(d.n, 1)
    for u, v in tqdm(edges, desc="Edges") if show_progress_bar else edges:
        mm, nn = cube.edge_pair(u, v)
        if epsilon[(u, v)]:
            mm, nn = nn, mm
        sign = -1 if standard_sign(u, v) else 1
        rows, cols = cube.basis(u), cube.basis(v)
        if unified:
            for r, c in zip(*np.nonzero((mm != 0) | (nn != 0))):
                m, n = sign * int(mm[r, c]), sign * int(nn[r, c])
                for p in (0, 1):
                    add((p, v, cols[c]), (p, u, rows[r]), m)
                    add((p, v, cols[c]), (1 - p, u, rows[r]), n)
        else:
            matrix = sign * specialize_pair((mm, nn), theory)
            for r, c in zip(*np.nonzero(matrix)):
                add((v, cols[c]), (u, rows[r]), int(matrix[r, c]))
    if theory == Constants.MOD2:
        blocks = {ij: m % 2 for ij, m in blocks.items()}

    xi_action = None
    if unified:
        xi_action = {}
        for ij, gens in generators.items():
            index = {g: k for k, g in enumerate(gens)}
            xi = np.zeros((len(gens), len(gens)), dtype=np.int64)
            for k, (p, v, monomial) in enumerate(gens):
                xi[index[(1 - p, v, monomial)], k] = 1
            xi_action[ij] = xi
    c = BigradedComplex(theory, dict(generators), blocks, xi_action=xi_action, name=f"Kc_{theory}({d})")
    c.attach(d, cube, epsilon)
    logger.info("Built %s complex of %s: %d generators", theory, d, c.total_rank())
    return c


def basepoint_circles(cube: ResolutionCube, basepoint: int) -> dict[int, int]:
    """! Circle through the basepoint at every vertex"""
    return {v: cube.resolution(v).circle_of_label[basepoint] for v in range(1 << cube.n)}


def _basepoint_of(c: BigradedComplex, basepoint: int | None) -> int:
    d = c.diagram
    if d is None or c.cube is None:
        raise ValueError("The complex does not remember its diagram")
    basepoint = d.basepoint if basepoint is None else basepoint
    if basepoint is None:
        raise ValueError(f"Reduced complex of {d} needs a basepoint")
    if basepoint not in d.edges:
        raise ValueError(f"Basepoint {basepoint} is not an edge of {d}")
    return basepoint


def reduced_subcomplex(c: BigradedComplex, basepoint: int | None = None) -> BigradedComplex:
    """! Subcomplex spanned by the generators that contain the basepoint circle, quantum grading raised by 1
    @param basepoint: edge label, the diagram's basepoint by default
    """
    circles = basepoint_circles(c.cube, _basepoint_of(c, basepoint))

    def keep(g: Hashable) -> bool:
        v, monomial = vertex_and_monomial(g)
        return circles[v] in monomial

    return c.restrict(keep, (0, 1), name=f"{c.name} reduced", reduced=True)


def reduced_quotient(c: BigradedComplex, basepoint: int | None = None) -> BigradedComplex:
    """! Quotient by the reduced subcomplex: generators avoiding the basepoint circle, quantum grading lowered by 1"""
    circles = basepoint_circles(c.cube, _basepoint_of(c, basepoint))

    def keep(g: Hashable) -> bool:
        v, monomial = vertex_and_monomial(g)
        return circles[v] not in monomial

    return c.restrict(keep, (0, -1), name=f"{c.name} reduced quotient", reduced=True)
