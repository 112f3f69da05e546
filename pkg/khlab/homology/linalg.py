"""Linear algebra over the field with two elements on numpy uint8 arrays."""

import numpy as np
from numpy.typing import ArrayLike


def to_f2(matrix: ArrayLike) -> np.ndarray:
    m = np.asarray(matrix)
    if m.size == 0:
        return np.zeros(m.shape, dtype=np.uint8)
    if m.dtype == object:
        return np.vectorize(lambda x: int(x) % 2, otypes=[np.uint8])(m)
    return (m.astype(np.int64) % 2).astype(np.uint8)


def f2_rref(matrix: ArrayLike) -> tuple[np.ndarray, list[int]]:
    """! Reduced row echelon form, pivots searched left to right
    @return the reduced matrix and its pivot columns
    """
    m = to_f2(matrix)
    if m.ndim != 2:
        raise ValueError(f"Expected a matrix, got shape {m.shape}")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nonzero = np.nonzero(m[r:, c])[0]
        if nonzero.size == 0:
            continue
        p = r + int(nonzero[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        m[others] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def f2_rank(matrix: ArrayLike) -> int:
    m = to_f2(matrix)
    if m.size == 0:
        return 0
    return len(f2_rref(m)[1])


def f2_solve(a: ArrayLike, b: ArrayLike) -> np.ndarray | None:
    """! A solution of a x = b with every free variable 0, or None if there is none"""
    a2 = to_f2(a)
    b2 = to_f2(b).reshape(-1, 1)
    rows, cols = a2.shape
    if rows == 0:
        return np.zeros(cols, dtype=np.uint8)
    reduced, pivots = f2_rref(np.hstack([a2, b2]))
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for row, c in enumerate(pivots):
        x[c] = reduced[row, cols]
    return x


def f2_nullspace(matrix: ArrayLike, cols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """! Basis of the kernel as matrix columns, one per free column of the echelon form
    @param cols: column count, needed when the matrix has no rows
    """
    m = to_f2(matrix)
    if m.ndim != 2 or m.shape[0] == 0:
        n = cols if cols is not None else (m.shape[1] if m.ndim == 2 else 0)
        return np.eye(n, dtype=np.uint8), list(range(n))
    reduced, pivots = f2_rref(m)
    n = m.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, p in enumerate(pivots):
            basis[p, k] = reduced[row, f]
    return basis, free


def f2_matmul(a: ArrayLike, b: ArrayLike) -> np.ndarray:
    a2, b2 = to_f2(a).astype(np.int64), to_f2(b).astype(np.int64)
    return ((a2 @ b2) % 2).astype(np.uint8)


def f2_in_span(vectors: np.ndarray, target: np.ndarray) -> bool:
    """! Whether target lies in the column span of vectors"""
    if vectors.size == 0 or vectors.shape[1] == 0:
        return not to_f2(target).any()
    return f2_solve(vectors, target) is not None


def f2_inverse(matrix: ArrayLike) -> np.ndarray:
    """! Inverse of a square invertible matrix over 𝔽₂
    @raise ValueError: the matrix is singular
    """
    m = to_f2(matrix)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"Expected a square matrix, got shape {m.shape}")
    reduced, pivots = f2_rref(np.hstack([m, np.eye(n, dtype=np.uint8)]))
    if pivots[:n] != list(range(n)):
        raise ValueError("Matrix is singular over F2")
    return reduced[:, n:]
