"""Cancellations along one crossing of a Khovanov complex.

If a small circle ℓ exists on one side of crossing k, the edge maps of k pair generators with units:
a merge of ℓ pairs every generator without ℓ at the lower vertex with its image, a split creating ℓ
pairs every generator at the lower vertex with the term of its image that contains ℓ. Cancelling
these pairs leaves a complex that is chain homotopy equivalent to the original one.
"""

import logging
from dataclasses import dataclass, field
from typing import Hashable

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.homology.elimination import CancellationException, Elimination
from khlab.moves.ChainMapWitness import ChainMapWitness
from khlab.resolution.ResolutionCube import ResolutionCube

logger = logging.getLogger(__name__)

Pair = tuple[Hashable, Hashable]


@dataclass
class CancellationSite:
    """! Crossing k, an edge label on the small circle ℓ and the states other crossings are held at"""

    crossing: int
    loop_label: int
    fixed: dict[int, int] = field(default_factory=dict)

    def lower_vertices(self, n: int) -> list[int]:
        """! Vertices with the crossing in its 0-state and every fixed crossing in its prescribed state"""
        result = []
        for v in range(1 << n):
            if v >> self.crossing & 1:
                continue
            if all(v >> c & 1 == state for c, state in self.fixed.items()):
                result.append(v)
        return result


def _cube_of(c: BigradedComplex) -> ResolutionCube:
    if c.cube is None:
        raise CancellationException(f"{c} does not remember its cube of resolutions")
    return c.cube


def _touched(cube: ResolutionCube, v: int, k: int) -> set[int]:
    resolution = cube.resolution(v)
    return {resolution.circle_of((k, p)) for p in range(4)}


def merge_pairs(c: BigradedComplex, site: CancellationSite) -> list[Pair]:
    """! (x, y) with x a generator at a lower vertex avoiding ℓ and y its merge image
    @raise CancellationException: crossing k does not merge ℓ away at some vertex
    """
    cube = _cube_of(c)
    k = site.crossing
    pairs = []
    for v in site.lower_vertices(cube.n):
        loop = cube.resolution(v).circle_of_label[site.loop_label]
        if loop not in _touched(cube, v, k) or len(_touched(cube, v, k)) != 2:
            raise CancellationException(f"Crossing {k + 1} does not merge the circle of edge {site.loop_label} at {v:b}")
        u = v | 1 << k
        images = cube.edge_images(u, v)
        for m in cube.basis(v):
            if loop in m:
                continue
            (y,) = images[m].terms
            pairs.append(((v, m), (u, y)))
    return pairs


def split_pairs(c: BigradedComplex, site: CancellationSite) -> list[Pair]:
    """! (x, y) with x any generator at a lower vertex and y the term of its split image containing ℓ
    @raise CancellationException: crossing k does not split ℓ off at some vertex
    """
    cube = _cube_of(c)
    k = site.crossing
    pairs = []
    for v in site.lower_vertices(cube.n):
        u = v | 1 << k
        loop = cube.resolution(u).circle_of_label[site.loop_label]
        if loop not in _touched(cube, u, k) or len(_touched(cube, v, k)) != 1:
            raise CancellationException(f"Crossing {k + 1} does not split off the circle of edge {site.loop_label} at {v:b}")
        images = cube.edge_images(u, v)
        for m in cube.basis(v):
            (y,) = [t for t in images[m].terms if loop in t]
            pairs.append(((v, m), (u, y)))
    return pairs


def cancel_pairs(c: BigradedComplex, pairs: list[Pair]) -> tuple[BigradedComplex, Elimination]:
    """! Cancel the given entries in order
    @raise CancellationException: an entry is not a unit when its turn comes
    """
    engine = Elimination(c)
    for x, y in pairs:
        engine.cancel(x, y)
    reduced = engine.reduced_complex()
    logger.debug("Cancelled %d pairs of %s, %d generators left", len(pairs), c, reduced.total_rank())
    return reduced, engine


def discarded(c: BigradedComplex, pairs: list[Pair]) -> BigradedComplex:
    """! The complex spanned by the cancelled generators"""
    gone = {g for pair in pairs for g in pair}
    return c.restrict(lambda g: g in gone)


def cancel_merge(c: BigradedComplex, site: CancellationSite) -> tuple[BigradedComplex, ChainMapWitness]:
    """! Quotient by the acyclic subcomplex a merge of ℓ spans, with the projection onto it"""
    reduced, engine = cancel_pairs(c, merge_pairs(c, site))
    witness = ChainMapWitness.certify(engine.projection(reduced), "cancel merge", check_quasi_iso=True)
    return reduced, witness


def cancel_split(c: BigradedComplex, site: CancellationSite) -> tuple[BigradedComplex, ChainMapWitness]:
    """! Subcomplex left by cancelling a split that creates ℓ, with its inclusion"""
    reduced, engine = cancel_pairs(c, split_pairs(c, site))
    witness = ChainMapWitness.certify(engine.inclusion(reduced), "cancel split", check_quasi_iso=True)
    return reduced, witness
