import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

logger = logging.getLogger(__name__)


def to_object(matrix: ArrayLike) -> np.ndarray:
    """! Copy of an integer matrix with Python int entries, so no arithmetic can overflow"""
    m = np.asarray(matrix)
    out = np.empty(m.shape, dtype=object)
    for idx in np.ndindex(m.shape):
        out[idx] = int(m[idx])
    return out


def identity(n: int) -> np.ndarray:
    return to_object(np.eye(n, dtype=np.int64))


@dataclass
class SmithForm:
    """! u · m · v = d with u, v unimodular; u_inv and v_inv are their exact inverses"""

    u: np.ndarray | None
    d: np.ndarray
    v: np.ndarray | None
    u_inv: np.ndarray | None
    v_inv: np.ndarray | None

    @property
    def diagonal(self) -> list[int]:
        return [int(self.d[k, k]) for k in range(min(self.d.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)

    @property
    def invariant_factors(self) -> list[int]:
        """! Nonzero diagonal entries, each dividing the next"""
        return [x for x in self.diagonal if x != 0]

    @property
    def torsion(self) -> list[int]:
        return [x for x in self.invariant_factors if x > 1]


class _SmithReducer:
    """! Min-abs pivoting reduction of one integer matrix, recording the row and column operations"""

    def __init__(self, matrix: ArrayLike, with_transforms: bool):
        self.a = to_object(matrix)
        self.rows, self.cols = self.a.shape
        self.track = with_transforms
        if with_transforms:
            self.u, self.u_inv = identity(self.rows), identity(self.rows)
            self.v, self.v_inv = identity(self.cols), identity(self.cols)

    ## Elementary operations, mirrored on the transforms
    def swap_rows(self, i: int, k: int):
        if i == k:
            return
        self.a[[i, k]] = self.a[[k, i]]
        if self.track:
            self.u[[i, k]] = self.u[[k, i]]
            self.u_inv[:, [i, k]] = self.u_inv[:, [k, i]]

    def swap_cols(self, j: int, k: int):
        if j == k:
            return
        self.a[:, [j, k]] = self.a[:, [k, j]]
        if self.track:
            self.v[:, [j, k]] = self.v[:, [k, j]]
            self.v_inv[[j, k]] = self.v_inv[[k, j]]

    def add_row(self, target: int, source: int, q: int):
        """! row target += q · row source"""
        self.a[target] = self.a[target] + q * self.a[source]
        if self.track:
            self.u[target] = self.u[target] + q * self.u[source]
            self.u_inv[:, source] = self.u_inv[:, source] - q * self.u_inv[:, target]

    def add_col(self, target: int, source: int, q: int):
        """! column target += q · column source"""
        self.a[:, target] = self.a[:, target] + q * self.a[:, source]
        if self.track:
            self.v[:, target] = self.v[:, target] + q * self.v[:, source]
            self.v_inv[source] = self.v_inv[source] - q * self.v_inv[target]

    def negate_row(self, i: int):
        self.a[i] = -self.a[i]
        if self.track:
            self.u[i] = -self.u[i]
            self.u_inv[:, i] = -self.u_inv[:, i]

    ## Reduction
    def _min_abs(self, s: int, only_cross: bool = False) -> tuple[int, int] | None:
        best = None
        if only_cross:
            candidates = [(i, s) for i in range(s, self.rows)] + [(s, j) for j in range(s + 1, self.cols)]
        else:
            nz = np.nonzero(self.a[s:, s:] != 0)
            candidates = [(int(i) + s, int(j) + s) for i, j in zip(*nz)]
        for i, j in candidates:
            x = self.a[i, j]
            if x != 0 and (best is None or abs(x) < abs(self.a[best])):
                best = (i, j)
        return best

    def _non_divisible(self, s: int) -> int | None:
        p = self.a[s, s]
        block = self.a[s + 1 :, s + 1 :]
        for i, j in zip(*np.nonzero(block != 0)):
            if block[i, j] % p != 0:
                return int(i) + s + 1
        return None

    def reduce(self) -> SmithForm:
        s = 0
        while s < min(self.rows, self.cols):
            pivot = self._min_abs(s)
            if pivot is None:
                break
            self.swap_rows(s, pivot[0])
            self.swap_cols(s, pivot[1])
            while True:
                p = self.a[s, s]
                for i in np.nonzero(self.a[s + 1 :, s] != 0)[0]:
                    self.add_row(int(i) + s + 1, s, -(self.a[int(i) + s + 1, s] // p))
                for j in np.nonzero(self.a[s, s + 1 :] != 0)[0]:
                    self.add_col(int(j) + s + 1, s, -(self.a[s, int(j) + s + 1] // p))
                if (self.a[s + 1 :, s] != 0).any() or (self.a[s, s + 1 :] != 0).any():
                    i, j = self._min_abs(s, only_cross=True)  # type: ignore[misc]
                    self.swap_rows(s, i)
                    self.swap_cols(s, j)
                    continue
                row = self._non_divisible(s)
                if row is None:
                    break
                self.add_row(s, row, 1)
            if self.a[s, s] < 0:
                self.negate_row(s)
            s += 1
        if self.track:
            return SmithForm(self.u, self.a, self.v, self.u_inv, self.v_inv)
        return SmithForm(None, self.a, None, None, None)


def smith_normal_form(matrix: ArrayLike, with_transforms: bool = True) -> SmithForm:
    """! Smith normal form of an integer matrix with exact arbitrary precision arithmetic.
    @param with_transforms: also return u, v and their inverses
    @return SmithForm with u · matrix · v = d
    """
    m = np.asarray(matrix)
    if m.ndim != 2:
        raise ValueError(f"Expected a matrix, got shape {m.shape}")
    return _SmithReducer(m, with_transforms).reduce()


def invariant_factors(matrix: ArrayLike) -> list[int]:
    m = np.asarray(matrix)
    if m.size == 0:
        return []
    return smith_normal_form(m, with_transforms=False).invariant_factors
