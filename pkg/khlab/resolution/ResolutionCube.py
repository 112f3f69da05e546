import logging
from itertools import combinations
from typing import Sequence

import numpy as np

from khlab.algebra.AlgebraElement import AlgebraElement, merge, split
from khlab.algebra.RingElem import RingElem
from khlab.cube.Cochain import Cochain, Face, faces, solve_coboundary
from khlab.cube.CubeVertex import edge_coordinate
from khlab.datatypes import Constants, FaceType, Monomial, Theory
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.resolution.Resolution import Resolution

logger = logging.getLogger(__name__)

# m + nξ matrix stored as the pair (m, n) of integer arrays
MatrixPair = tuple[np.ndarray, np.ndarray]


class FaceClassificationException(Exception):
    pass


def monomials(number_of_circles: int) -> list[Monomial]:
    """! All monomials on the circles 0..k-1, ascending as tuples"""
    result: list[Monomial] = []
    for size in range(number_of_circles + 1):
        result.extend(combinations(range(number_of_circles), size))
    return sorted(result)


def pair_product(a: MatrixPair, b: MatrixPair) -> MatrixPair:
    # (A + ξA')(B + ξB') = (AB + A'B') + ξ(AB' + A'B)
    return a[0] @ b[0] + a[1] @ b[1], a[0] @ b[1] + a[1] @ b[0]


def specialize_pair(pair: MatrixPair, theory: Theory) -> np.ndarray:
    """! Integer matrix of a ξ-pair under ξ = ±1; reduced mod 2 for `mod2`"""
    match theory.name:
        case "even":
            return pair[0] + pair[1]
        case "odd":
            return pair[0] - pair[1]
        case "mod2":
            return (pair[0] + pair[1]) % 2
        case _:
            raise NotImplementedError(f"Theory {theory} has no integer specialization")


class ResolutionCube:
    """! Cube of resolutions of a diagram: resolutions, Khovanov generators and edge maps per vertex.

    Resolutions and edge maps are computed on demand and cached. Edge maps run from the lower vertex
    to the higher one and are kept over ℤ_u as pairs of integer matrices.
    """

    def __init__(self, diagram: OrientedDiagram):
        self.diagram = diagram
        self.n = diagram.n
        self._resolutions: dict[int, Resolution] = {}
        self._pairs: dict[tuple[int, int], MatrixPair] = {}
        self._types: dict[Face, FaceType] = {}

    def resolution(self, v: int) -> Resolution:
        if v not in self._resolutions:
            self._resolutions[v] = Resolution(self.diagram, v)
        return self._resolutions[v]

    def basis(self, v: int) -> list[Monomial]:
        return monomials(self.resolution(v).number_of_circles)

    def edge_images(self, u: int, v: int) -> dict[Monomial, AlgebraElement]:
        """! Image of every monomial of Λ(L_v) in Λ(L_u) for u ≥₁ v, over ℤ_u
        @raise ValueError: (u, v) is not an edge
        """
        k = edge_coordinate(u, v)
        low, high = self.resolution(v), self.resolution(u)
        relabel = {c: high.circle_of_label[min(labels)] for c, labels in enumerate(low.labels)}
        touched = sorted({low.circle_of((k, p)) for p in range(4)})
        images = {}
        if len(touched) == 2:
            a1, a2 = touched
            a = high.circle_of((k, 0))
            for m in self.basis(v):
                images[m] = merge(AlgebraElement.from_monomial(m), a1, a2, a, relabel)
        else:
            (a,) = touched
            x = self.diagram.crossings[k]
            arrow = self.diagram.arrows[k]
            a1 = high.circle_of((k, x.tail_position(1, arrow)))
            a2 = high.circle_of((k, x.head_position(1, arrow)))
            if a1 == a2:
                raise AssertionError(f"Surgery at crossing {k + 1} of vertex {v:b} neither merges nor splits")
            for m in self.basis(v):
                images[m] = split(AlgebraElement.from_monomial(m), a, a1, a2, relabel)
        return images

    def edge_pair(self, u: int, v: int) -> MatrixPair:
        """! Edge map Λ(L_v) -> Λ(L_u) as a pair (m, n) of int64 matrices, rows indexed by the basis of u"""
        if (u, v) not in self._pairs:
            rows = {m: r for r, m in enumerate(self.basis(u))}
            cols = self.basis(v)
            mm = np.zeros((len(rows), len(cols)), dtype=np.int64)
            nn = np.zeros((len(rows), len(cols)), dtype=np.int64)
            images = self.edge_images(u, v)
            for col, source in enumerate(cols):
                for target, coeff in images[source].terms.items():
                    mm[rows[target], col] = coeff.m
                    nn[rows[target], col] = coeff.n
            self._pairs[(u, v)] = (mm, nn)
        return self._pairs[(u, v)]

    def edge_matrix(self, u: int, v: int, theory: Theory) -> np.ndarray:
        """! Edge map as an object matrix of ring elements of the given theory"""
        mm, nn = self.edge_pair(u, v)
        out = np.empty(mm.shape, dtype=object)
        for idx in np.ndindex(mm.shape):
            out[idx] = RingElem(int(mm[idx]), int(nn[idx]), theory)
        return out

    def composites(self, square: Face) -> tuple[MatrixPair, MatrixPair]:
        """! The two composites w -> u of a square (u, v, v2, w): through v and through v2"""
        u, v, v2, w = square
        return (
            pair_product(self.edge_pair(u, v), self.edge_pair(v, w)),
            pair_product(self.edge_pair(u, v2), self.edge_pair(v2, w)),
        )

    def classify(self, square: Face) -> FaceType:
        if square not in self._types:
            first, second = self.composites(square)
            commutes = np.array_equal(first[0], second[0]) and np.array_equal(first[1], second[1])
            # ξ·(m + nξ) = n + mξ
            commutes_xi = np.array_equal(first[0], second[1]) and np.array_equal(first[1], second[0])
            match commutes, commutes_xi:
                case True, True:
                    face_type = Constants.FACE_XY
                case True, False:
                    face_type = Constants.FACE_C
                case False, True:
                    face_type = Constants.FACE_A
                case _:
                    raise FaceClassificationException(
                        f"Square {square} of {self.diagram} commutes neither on the nose nor up to ξ"
                    )
            self._types[square] = face_type
        return self._types[square]

    def psi_constraints(self) -> dict[Face, int]:
        """! Values of δε required on the constrained squares: 1 (ξ) on A faces, 0 on C faces"""
        target = {}
        for square in faces(self.n, 2):
            face_type = self.classify(square)
            if face_type != Constants.FACE_XY:
                target[square] = int(face_type == Constants.FACE_A)
        logger.debug("%d of the squares of %s are constrained", len(target), self.diagram)
        return target

    def edge_assignment(
        self, variable_order: Sequence[Face] | None = None, fixed: dict[Face, int] | None = None
    ) -> Cochain:
        return solve_coboundary(self.n, self.psi_constraints(), variable_order, fixed)

    def to_text(self) -> str:
        """! Line oriented listing of every resolution followed by the square types"""
        blocks = [self.resolution(v).to_text() for v in range(1 << self.n)]
        blocks += [f"square {sq}: {self.classify(sq)}" for sq in faces(self.n, 2)]
        return "\n".join(blocks)


## Module level shortcuts on a fresh cube
def edge_matrix_raw(d: OrientedDiagram, u: int, v: int, theory: Theory = Constants.UNIFIED) -> np.ndarray:
    return ResolutionCube(d).edge_matrix(u, v, theory)


def classify_face(d: OrientedDiagram, square: Face) -> FaceType:
    return ResolutionCube(d).classify(square)


def psi_constraints(d: OrientedDiagram) -> dict[Face, int]:
    return ResolutionCube(d).psi_constraints()


def edge_assignment(
    d: OrientedDiagram, variable_order: Sequence[Face] | None = None, fixed: dict[Face, int] | None = None
) -> Cochain:
    return ResolutionCube(d).edge_assignment(variable_order, fixed)
