import logging
from collections import defaultdict
from typing import Hashable

import numpy as np

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.datatypes import Constants
from khlab.homology.linalg import f2_matmul, f2_nullspace, f2_rank

logger = logging.getLogger(__name__)


class FilteredComplex:
    """! 𝔽₂ cochain complex graded by i only, with a filtration level on every generator.

    `differentials[i]` maps degree i to degree i + 1 (rows indexed by the generators of i + 1). The
    filtration is descending: F_q is spanned by the generators of level ≥ q, and a filtered differential
    never lowers the level.
    """

    def __init__(
        self,
        generators: dict[int, list[Hashable]],
        levels: dict[Hashable, int],
        differentials: dict[int, np.ndarray] | None = None,
        name: str = "",
    ):
        self.generators = {i: list(gens) for i, gens in generators.items() if gens}
        self.levels = dict(levels)
        self.name = name
        self.differentials: dict[int, np.ndarray] = {}
        for i, matrix in (differentials or {}).items():
            expected = (self.rank(i + 1), self.rank(i))
            if matrix.shape != expected:
                raise ValueError(f"Differential at {i} has shape {matrix.shape}, expected {expected}")
            if matrix.any():
                self.differentials[i] = (matrix % 2).astype(np.uint8)
        # Attached by the builder
        self.diagram = None

    def rank(self, i: int) -> int:
        return len(self.generators.get(i, []))

    def total_rank(self) -> int:
        return sum(len(g) for g in self.generators.values())

    def homological_degrees(self) -> list[int]:
        return sorted(self.generators)

    def differential(self, i: int) -> np.ndarray:
        if i in self.differentials:
            return self.differentials[i]
        return np.zeros((self.rank(i + 1), self.rank(i)), dtype=np.uint8)

    def filtration_levels(self) -> list[int]:
        return sorted(set(self.levels.values()))

    def search_range(self) -> list[int]:
        """! Levels from one step below the bottom of the filtration, where F_q is everything, to the top"""
        levels = self.filtration_levels()
        if not levels:
            return []
        return list(range(levels[0] - 2, levels[-1] + 1, 2))

    def in_filtration(self, i: int, q: int) -> list[int]:
        """! Positions of the degree-i generators lying in F_q"""
        return [k for k, g in enumerate(self.generators.get(i, [])) if self.levels[g] >= q]

    ## Sanity
    def is_complex(self) -> bool:
        return all(not f2_matmul(self.differential(i + 1), m).any() for i, m in self.differentials.items())

    def is_filtered(self) -> bool:
        for i, m in self.differentials.items():
            sources, targets = self.generators[i], self.generators[i + 1]
            for r, c in zip(*np.nonzero(m)):
                if self.levels[targets[r]] < self.levels[sources[c]]:
                    logger.warning("Differential lowers the level from %s to %s", sources[c], targets[r])
                    return False
        return True

    def associated_graded(self, q: int) -> BigradedComplex:
        """! F_q / F_{q+2}, the level-q generators with the level-preserving part of the differential"""
        generators: dict[tuple[int, int], list[Hashable]] = defaultdict(list)
        for i, gens in self.generators.items():
            generators[(i, q)] = [g for g in gens if self.levels[g] == q]
        blocks = {}
        for i, m in self.differentials.items():
            rows = [k for k, g in enumerate(self.generators[i + 1]) if self.levels[g] == q]
            cols = [k for k, g in enumerate(self.generators[i]) if self.levels[g] == q]
            if rows and cols:
                blocks[(i, q)] = m[np.ix_(rows, cols)].astype(np.int64)
        return BigradedComplex(Constants.MOD2, dict(generators), blocks, name=f"gr_{q}({self.name})")

    ## Homology of filtration pieces
    def homology_dimension(self, i: int | None = None) -> int:
        degrees = self.homological_degrees() if i is None else [i]
        total = 0
        for k in degrees:
            total += self.rank(k) - f2_rank(self.differential(k)) - f2_rank(self.differential(k - 1))
        return total

    def boundaries(self, i: int) -> np.ndarray:
        """! Spanning set of the degree-i boundaries of the whole complex, as columns"""
        return self.differential(i - 1)

    def cycles(self, i: int, q: int) -> np.ndarray:
        """! Basis of the degree-i cycles of F_q, as columns in the coordinates of the whole complex"""
        cols = self.in_filtration(i, q)
        result = np.zeros((self.rank(i), 0), dtype=np.uint8)
        if not cols:
            return result
        kernel, _ = f2_nullspace(self.differential(i)[:, cols], cols=len(cols))
        if kernel.shape[1] == 0:
            return result
        result = np.zeros((self.rank(i), kernel.shape[1]), dtype=np.uint8)
        result[cols, :] = kernel
        return result

    def image_dimension(self, i: int, q: int, cycles: np.ndarray | None = None) -> int:
        """! Dimension of the image of H^i(F_q) (or of the span of the given cycles) in H^i of the whole complex"""
        z = self.cycles(i, q) if cycles is None else cycles
        if z.shape[1] == 0:
            return 0
        b = self.boundaries(i)
        return f2_rank(np.hstack([b, z])) - f2_rank(b)

    def __str__(self):
        ranks = ", ".join(f"{i}: {len(g)}" for i, g in sorted(self.generators.items()))
        return f"FilteredComplex({self.name}, {{{ranks}}})"

    def __repr__(self):
        return str(self)
