"""Chain maps of elementary cobordisms: births, deaths and saddles.

Births and deaths add or remove a crossingless circle U. On the cochain complexes Kc the birth sends a
generator to the same monomial without U and the death keeps generators containing U and drops the
factor; their transposes on the dual complexes are the projection and the inclusion of degree -1.
A saddle is read off the cube of its cobordism diagram, whose extra last crossing has the two ends of
the saddle as its resolutions: the edge maps in that direction form the map between the two faces.
"""

import logging
from typing import Hashable

import numpy as np

from khlab.algebra.AlgebraElement import permutation_parity
from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.ChainMap import label_map
from khlab.complexes.khovanov import build_complex
from khlab.cube.Cochain import Cochain, EdgeAssignmentException, faces
from khlab.datatypes import Constants, Monomial, Theory
from khlab.diagram import rewriting
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.diagram.rewriting import Rewrite
from khlab.moves.ChainMapWitness import ChainMapWitness
from khlab.moves.reidemeister import check_theory, model_map
from khlab.resolution.Resolution import Resolution, circle_correspondence
from khlab.resolution.ResolutionCube import ResolutionCube
from khlab.utils import popcount

logger = logging.getLogger(__name__)


def _sign(c: BigradedComplex, word: list[int]) -> int:
    """! Specialized ξ^parity picked up by sorting a word of circles"""
    if c.theory == Constants.ODD:
        return -1 if permutation_parity(word) else 1
    return 1


def _relabel(c: BigradedComplex, monomial: Monomial, circles: dict[int, int | None]) -> tuple[Monomial, int]:
    word = [circles[x] for x in monomial]
    return tuple(sorted(word)), _sign(c, word)  # type: ignore[arg-type]


def _inverse(correspondence: dict[int, int | None]) -> dict[int, int]:
    return {b: a for a, b in correspondence.items() if b is not None}


## Births and deaths
def birth_step(source: BigradedComplex, step: Rewrite) -> ChainMapWitness:
    """! Kc(d) -> Kc(d ⊔ U), x ↦ x, of bidegree (0, 1)"""
    check_theory(source)
    target = build_complex(step.after, source.theory, epsilon=source.epsilon)
    images: dict[Hashable, dict[Hashable, int]] = {}
    for gens in source.generators.values():
        for v, monomial in gens:
            to_small = circle_correspondence(target.cube.resolution(v), source.cube.resolution(v), step.label_map)
            image, sign = _relabel(source, monomial, _inverse(to_small))
            images[(v, monomial)] = {(v, image): sign}
    f = label_map(source, target, images, shift=(0, 1), name="birth")
    return ChainMapWitness.certify(f, "birth")


def death_step(source: BigradedComplex, step: Rewrite) -> ChainMapWitness:
    """! Kc(d ⊔ U) -> Kc(d), x∧U ↦ ±x and x ↦ 0, of bidegree (0, 1).

    The sign is ξ to the number of circles sorted after U, which moves U to the end of the monomial.
    """
    check_theory(source)
    target = build_complex(step.after, source.theory, epsilon=source.epsilon)
    (loop,) = step.loop_labels
    images: dict[Hashable, dict[Hashable, int]] = {}
    for gens in source.generators.values():
        for v, monomial in gens:
            resolution = source.cube.resolution(v)
            u = resolution.circle_of_label[loop]
            if u not in monomial:
                continue
            to_small = circle_correspondence(resolution, target.cube.resolution(v), step.label_map)
            rest = [x for x in monomial if x != u]
            image, sign = _relabel(source, rest, to_small)
            after_u = sum(1 for x in monomial if x > u)
            sign *= -1 if source.theory == Constants.ODD and after_u % 2 else 1
            images[(v, monomial)] = {(v, image): sign}
    f = label_map(source, target, images, shift=(0, 1), name="death")
    return ChainMapWitness.certify(f, "death")


## Saddles
def _face_assignment(cube: ResolutionCube, epsilon: Cochain, n: int) -> tuple[Cochain, bool]:
    """! Edge assignment of the cobordism cube restricting to epsilon on its 0-face, when one exists"""
    fixed = {(u, v): epsilon[(u, v)] for u, v in faces(n, 1)}
    try:
        return cube.edge_assignment(fixed=fixed), True
    except EdgeAssignmentException:
        logger.warning("No edge assignment of %s extends the one of its 0-face", cube.diagram)
        return cube.edge_assignment(), False


def saddle_degree(step: Rewrite) -> tuple[int, int]:
    """! Bidegree of the saddle map: -1 in q up to the change of normalization between the two ends"""
    before, after = step.before, step.after
    di = before.n_minus - after.n_minus
    dj = -1 + (after.n_plus - 2 * after.n_minus) - (before.n_plus - 2 * before.n_minus)
    return di, dj


def saddle_step(source: BigradedComplex, step: Rewrite) -> ChainMapWitness:
    """! Φ: Kc(before) -> Kc(after), the edge maps of the extra crossing of the cobordism cube.

    In the cobordism cube the differential along the last crossing carries the standard sign (-1)^|v|;
    Φ strips it, which makes Φ commute with the differentials of the two faces.
    """
    check_theory(source)
    big = step.cobordism_diagram
    if big is None:
        raise ValueError(f"{step} carries no cobordism diagram")
    theory = source.theory
    n = step.before.n
    k = big.n - 1
    cube = ResolutionCube(big)
    epsilon, pinned = _face_assignment(cube, source.epsilon, n)
    bottom = Cochain(n, 1, {(u, v): epsilon[(u, v)] for u, v in faces(n, 1)})
    top = Cochain(n, 1, {(u, v): epsilon[(u | 1 << k, v | 1 << k)] for u, v in faces(n, 1)})
    whole = build_complex(big, theory, cube=cube, epsilon=epsilon)
    start = source if pinned else build_complex(step.before, theory, epsilon=bottom)
    target = build_complex(step.after, theory, epsilon=top)

    def circles(w: int, end: Resolution, labels: dict[int, int | None]) -> dict[int, int | None]:
        return circle_correspondence(cube.resolution(w), end, labels)

    images: dict[Hashable, dict[Hashable, int]] = {}
    for gens in start.generators.values():
        for v, monomial in gens:
            into_big = _inverse(circles(v, start.cube.resolution(v), step.label_map))
            m_big, sign_in = _relabel(start, monomial, into_big)
            (i, j), col = whole.locate((v, m_big))
            rows = whole.generators.get((i + 1, j), [])
            column = whole.differential(i, j)[:, col] if rows else np.zeros(0, dtype=np.int64)
            u = v | 1 << k
            image: dict[Hashable, int] = {}
            for r in np.nonzero(column)[0]:
                w, m_top = rows[int(r)]
                if w != u:
                    continue
                out = circles(u, target.cube.resolution(v), step.target_label_map)
                m_after, sign_out = _relabel(start, m_top, out)
                value = (-1) ** popcount(v) * sign_in * sign_out * int(column[r])
                image[(v, m_after)] = image.get((v, m_after), 0) + value
            images[(v, monomial)] = image
    f = label_map(start, target, images, shift=saddle_degree(step), name="saddle")
    witness = ChainMapWitness.certify(f, "saddle")
    if not pinned:
        witness = model_map(source, start, "relabel").then(witness, "saddle")
    return witness


## Public entry points on diagrams
# birth_map, death_map and saddle_map live on the dual complexes Tot = Kc*, where the birth projects
# onto the generators avoiding U and the death includes those containing it; the *_cochain_map
# variants are their transposes on Kc, which the movies compose.
def birth_cochain_map(d: OrientedDiagram, theory: Theory | str = Constants.EVEN) -> ChainMapWitness:
    return birth_step(build_complex(d, theory), rewriting.birth(d))


def death_cochain_map(
    d: OrientedDiagram, loop: int | None = None, theory: Theory | str = Constants.EVEN
) -> ChainMapWitness:
    return death_step(build_complex(d, theory), rewriting.death(d, loop))


def saddle_cochain_map(d: OrientedDiagram, e1: int, e2: int, theory: Theory | str = Constants.EVEN) -> ChainMapWitness:
    return saddle_step(build_complex(d, theory), rewriting.saddle(d, e1, e2))


def birth_map(d: OrientedDiagram, theory: Theory | str = Constants.EVEN) -> ChainMapWitness:
    """! Tot(d ⊔ U) -> Tot(d): x ↦ x on generators without U, zero on the others; q-degree -1"""
    return birth_cochain_map(d, theory).dual("birth")


def death_map(d: OrientedDiagram, loop: int | None = None, theory: Theory | str = Constants.EVEN) -> ChainMapWitness:
    """! Tot(d ∖ U) -> Tot(d) for a free loop U of d: x ↦ ±x∧U; q-degree -1"""
    return death_cochain_map(d, loop, theory).dual("death")


def saddle_map(d: OrientedDiagram, e1: int, e2: int, theory: Theory | str = Constants.EVEN) -> ChainMapWitness:
    """! Tot(after) -> Tot(before) of the saddle joining e1 and e2 of d; q-degree +1 up to normalization"""
    return saddle_cochain_map(d, e1, e2, theory).dual("saddle")
