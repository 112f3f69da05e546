import numpy as np
import pytest

from khlab.homology.linalg import f2_inverse, f2_matmul, f2_nullspace, f2_rank, f2_solve
from khlab.homology.smith import invariant_factors, smith_normal_form

matrices = (
    [[2, 4], [6, 8]],
    [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
    [[0, 0], [0, 0]],
    [[2, 0, 0], [0, 3, 0]],
    [[12, 18], [30, 45], [6, 9]],
)

# Invariant factors for each matrix defined above
factors = {
    0: [2, 4],
    1: [1, 3],
    2: [],
    3: [1, 6],
    4: [3],
}


@pytest.mark.parametrize("k", range(len(matrices)))
def test_smith_normal_form(k):
    m = np.array(matrices[k], dtype=object)
    form = smith_normal_form(m)
    assert form.invariant_factors == factors[k]
    assert np.array_equal(form.u @ m @ form.v, form.d)
    assert np.array_equal(form.u @ form.u_inv, np.eye(m.shape[0], dtype=object))
    assert np.array_equal(form.v_inv @ form.v, np.eye(m.shape[1], dtype=object))


def test_large_entries_stay_exact():
    big = 2**70
    assert invariant_factors([[big, 0], [0, 2 * big]]) == [big, 2 * big]


def test_f2_rank_and_kernel():
    m = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert f2_rank(m) == 2
    kernel, free = f2_nullspace(m)
    assert kernel.shape == (3, 1)
    assert not f2_matmul(m, kernel).any()


def test_f2_solve():
    a = np.array([[1, 1], [0, 1]])
    x = f2_solve(a, np.array([1, 1]))
    assert x is not None
    assert np.array_equal(f2_matmul(a, x.reshape(-1, 1)).ravel(), [1, 1])
    assert f2_solve(np.array([[1, 1], [1, 1]]), np.array([0, 1])) is None


def test_f2_inverse():
    m = np.array([[1, 1], [0, 1]])
    assert np.array_equal(f2_matmul(m, f2_inverse(m)), np.eye(2, dtype=np.uint8))
    with pytest.raises(ValueError):
        f2_inverse(np.array([[1, 1], [1, 1]]))
