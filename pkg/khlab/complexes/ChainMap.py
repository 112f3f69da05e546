import logging
from typing import Any

import numpy as np

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.datatypes import Bigrading

logger = logging.getLogger(__name__)


class NotAChainMapException(Exception):
    pass


class ChainMap:
    """! Map of bigraded complexes of bidegree `shift`, one integer matrix per source bigrading.

    `blocks[(i, j)]` maps the basis of source (i, j) to the basis of target (i + di, j + dj).
    """

    def __init__(
        self,
        source: BigradedComplex,
        target: BigradedComplex,
        blocks: dict[Bigrading, np.ndarray] | None = None,
        shift: Bigrading = (0, 0),
        name: str = "",
    ):
        if source.degree != target.degree:
            raise ValueError("Source and target differentials run in opposite directions")
        self.source = source
        self.target = target
        self.shift = shift
        self.name = name
        self.blocks: dict[Bigrading, np.ndarray] = {}
        for (i, j), matrix in (blocks or {}).items():
            expected = self._shape(i, j)
            if matrix.shape != expected:
                raise ValueError(f"Block at {(i, j)} of {name or 'chain map'} has shape {matrix.shape}, expected {expected}")
            if matrix.size and matrix.any():
                self.blocks[(i, j)] = matrix

    def _shape(self, i: int, j: int) -> tuple[int, int]:
        di, dj = self.shift
        return self.target.rank(i + di, j + dj), self.source.rank(i, j)

    @property
    def mod2(self) -> bool:
        return self.source.is_mod2() or self.target.is_mod2()

    def block(self, i: int, j: int) -> np.ndarray:
        if (i, j) in self.blocks:
            return self.blocks[(i, j)]
        return np.zeros(self._shape(i, j), dtype=np.int64)

    def _reduce(self, m: np.ndarray) -> np.ndarray:
        return m % 2 if self.mod2 else m

    def failures(self) -> list[Bigrading]:
        """! Source bigradings where f∂ ≠ ∂f"""
        di, dj = self.shift
        bad = []
        for i, j in self.source.bigradings():
            left = self.block(i + self.source.degree, j) @ self.source.differential(i, j)
            right = self.target.differential(i + di, j + dj) @ self.block(i, j)
            if self._reduce(left - right).any():
                bad.append((i, j))
        return bad

    def is_chain_map(self) -> bool:
        return not self.failures()

    def verify(self) -> "ChainMap":
        """! @raise NotAChainMapException: f∂ ≠ ∂f somewhere"""
        bad = self.failures()
        if bad:
            raise NotAChainMapException(f"{self.name or 'Map'} does not commute with the differentials at {bad}")
        return self

    def compose(self, inner: "ChainMap") -> "ChainMap":
        """! self ∘ inner"""
        di, dj = inner.shift
        blocks = {(i, j): self.block(i + di, j + dj) @ m for (i, j), m in inner.blocks.items()}
        return ChainMap(
            inner.source,
            self.target,
            {ij: self._reduce(m) for ij, m in blocks.items()},
            (di + self.shift[0], dj + self.shift[1]),
            f"{self.name} ∘ {inner.name}",
        )

    def reduce_mod2(self) -> "ChainMap":
        return ChainMap(
            self.source.mod2(), self.target.mod2(), {ij: m % 2 for ij, m in self.blocks.items()}, self.shift, self.name
        )

    def negate(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {ij: -m for ij, m in self.blocks.items()}, self.shift, self.name)

    def transpose(self) -> "ChainMap":
        """! Dual map between the transposed complexes, running from target to source"""
        di, dj = self.shift
        blocks = {(i + di, j + dj): m.T.copy() for (i, j), m in self.blocks.items()}
        return ChainMap(self.target.transpose(), self.source.transpose(), blocks, (-di, -dj), f"{self.name}*")

    def equals(self, other: "ChainMap") -> bool:
        if self.shift != other.shift:
            return False
        keys = set(self.blocks) | set(other.blocks)
        return all(not self._reduce(self.block(*ij) - other.block(*ij)).any() for ij in keys)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, ChainMap) and self.equals(other)

    def __str__(self):
        return f"ChainMap({self.name}, shift={self.shift}, blocks={sorted(self.blocks)})"

    def __jsonrepr__(self):
        return {"name": self.name, "shift": list(self.shift), "blocks": sorted(list(ij) for ij in self.blocks)}


def identity_map(c: BigradedComplex) -> ChainMap:
    return ChainMap(c, c, {ij: np.eye(c.rank(*ij), dtype=np.int64) for ij in c.bigradings()}, name="id")


def zero_map(source: BigradedComplex, target: BigradedComplex, shift: Bigrading = (0, 0)) -> ChainMap:
    return ChainMap(source, target, {}, shift, "0")


def label_map(
    source: BigradedComplex, target: BigradedComplex, images: dict, shift: Bigrading = (0, 0), name: str = ""
) -> ChainMap:
    """! Chain map sending each source generator to a combination {target generator: coefficient}.

    Source generators missing from images go to zero.
    """
    di, dj = shift
    blocks = {}
    for (i, j), gens in source.generators.items():
        index = target.index(i + di, j + dj)
        block = np.zeros((len(index), len(gens)), dtype=np.int64)
        for col, g in enumerate(gens):
            for h, coeff in images.get(g, {}).items():
                if h not in index:
                    raise ValueError(f"Image {h} of {g} is not a target generator in bigrading {(i + di, j + dj)}")
                block[index[h], col] += coeff
        blocks[(i, j)] = block
    return ChainMap(source, target, blocks, shift, name)


def mapping_cone(f: ChainMap) -> BigradedComplex:
    """! Cone(f): source shifted one step against the differential, then the target.

    A source generator of bigrading (i, j) sits at (i + di - degree, j + dj) tagged "s", a target generator
    keeps its bigrading tagged "t"; the differential is (a, b) ↦ (-∂a, f(a) + ∂b). f is a
    quasi-isomorphism exactly when the cone is acyclic.
    """
    source, target = f.source, f.target
    di, dj = f.shift
    delta = source.degree

    def from_source(i: int, j: int) -> Bigrading:
        return i + di - delta, j + dj

    generators: dict[Bigrading, list] = {}
    for (i, j), gens in source.generators.items():
        generators.setdefault(from_source(i, j), []).extend(("s", g) for g in gens)
    for ij, gens in target.generators.items():
        generators.setdefault(ij, []).extend(("t", g) for g in gens)

    differentials = {}
    for k, q in generators:
        s_here = (k - di + delta, q - dj)
        s_next = (k - di + 2 * delta, q - dj)
        rows_s, rows_t = source.rank(*s_next), target.rank(k + delta, q)
        cols_s, cols_t = source.rank(*s_here), target.rank(k, q)
        block = np.zeros((rows_s + rows_t, cols_s + cols_t), dtype=np.int64)
        block[:rows_s, :cols_s] = -source.differential(*s_here)
        block[rows_s:, :cols_s] = f.block(*s_here)
        block[rows_s:, cols_s:] = target.differential(k, q)
        if block.size:
            differentials[(k, q)] = block % 2 if f.mod2 else block
    theory = target.theory if not f.mod2 else source.mod2().theory
    return BigradedComplex(theory, generators, differentials, degree=delta, name=f"Cone({f.name})")
