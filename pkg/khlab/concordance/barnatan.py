"""The Bar-Natan deformation of the Khovanov complex over 𝔽₂.

Circles carry 𝔽₂[x]/(x² + x) instead of 𝔽₂[x]/(x²): a merge is the ring multiplication, so x·x = x, and
a split sends 1 to 1⊗x + x⊗1 + 1⊗1 and x to x⊗x. The extra terms raise the quantum grading by 2, so
the complex is filtered by j and its associated graded is the mod 2 Khovanov complex.
"""

import logging
from collections import defaultdict
from typing import Hashable

import numpy as np
from tqdm import tqdm

from khlab.complexes.khovanov import generator_bigrading
from khlab.concordance.FilteredComplex import FilteredComplex
from khlab.cube.Cochain import faces
from khlab.cube.CubeVertex import edge_coordinate
from khlab.datatypes import Monomial
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.resolution.ResolutionCube import ResolutionCube

logger = logging.getLogger(__name__)


class NotAKnotException(Exception):
    pass


def deformed_edge_images(cube: ResolutionCube, u: int, v: int) -> dict[Monomial, list[Monomial]]:
    """! Terms of the deformed edge map Λ(L_v) -> Λ(L_u) on every monomial, a monomial listing its x-circles"""
    k = edge_coordinate(u, v)
    low, high = cube.resolution(v), cube.resolution(u)
    relabel = {c: high.circle_of_label[min(labels)] for c, labels in enumerate(low.labels)}
    touched = sorted({low.circle_of((k, p)) for p in range(4)})
    images: dict[Monomial, list[Monomial]] = {}
    if len(touched) == 2:
        a = high.circle_of((k, 0))
        for m in cube.basis(v):
            rest = [relabel[c] for c in m if c not in touched]
            if any(c in touched for c in m):
                rest.append(a)
            images[m] = [tuple(sorted(rest))]
    else:
        (a,) = touched
        b1, b2 = sorted({high.circle_of((k, p)) for p in range(4)})
        for m in cube.basis(v):
            rest = [relabel[c] for c in m if c != a]
            if a in m:
                images[m] = [tuple(sorted(rest + [b1, b2]))]
            else:
                images[m] = [tuple(sorted(rest + [b1])), tuple(sorted(rest + [b2])), tuple(sorted(rest))]
    return images


def barnatan_complex(
    d: OrientedDiagram, *, cube: ResolutionCube | None = None, show_progress_bar: bool = False
) -> FilteredComplex:
    """! Filtered 𝔽₂ Bar-Natan complex of a knot diagram, generators (v, monomial) at level j
    @raise NotAKnotException: the diagram has more than one component
    """
    if not d.is_knot():
        raise NotAKnotException(f"{d} has {d.number_of_components()} components; concordance invariants need a knot")
    cube = cube or ResolutionCube(d)
    generators: dict[int, list[Hashable]] = defaultdict(list)
    levels: dict[Hashable, int] = {}
    for v in range(1 << d.n):
        for m in cube.basis(v):
            i, j = generator_bigrading(cube, v, m)
            generators[i].append((v, m))
            levels[(v, m)] = j
    for gens in generators.values():
        gens.sort()
    position = {g: (i, k) for i, gens in generators.items() for k, g in enumerate(gens)}
    blocks: dict[int, np.ndarray] = {
        i: np.zeros((len(generators.get(i + 1, [])), len(gens)), dtype=np.uint8) for i, gens in generators.items()
    }

    edges = faces(d.n, 1)
    for u, v in tqdm(edges, desc="Edges") if show_progress_bar else edges:
        for m, terms in deformed_edge_images(cube, u, v).items():
            i, col = position[(v, m)]
            for t in terms:
                _, row = position[(u, t)]
                blocks[i][row, col] ^= 1
    c = FilteredComplex(dict(generators), levels, blocks, name=f"BN({d})")
    c.diagram = d
    logger.info("Built Bar-Natan complex of %s: %d generators", d, c.total_rank())
    return c
