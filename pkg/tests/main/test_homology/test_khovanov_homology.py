import numpy as np
import pytest

from khlab.complexes.ChainMap import ChainMap, identity_map
from khlab.complexes.khovanov import build_complex, reduced_subcomplex
from khlab.homology.homology import (
    bockstein,
    bockstein_squares_vanish,
    euler_from_homology,
    homology,
    homology_at,
    induced_map,
    universal_coefficients_check,
    xi_action_on_homology,
)
from khlab.io.DiagramParser import load_diagram

right_trefoil = "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]"
left_trefoil = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"
figure_eight = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]"

cases = (
    (right_trefoil, "even", "Z"),
    (right_trefoil, "odd", "Z"),
    (right_trefoil, "even", "F2"),
    (right_trefoil, "mod2", "F2"),
    (right_trefoil, "even", "Q"),
    (left_trefoil, "even", "Z"),
    ("U", "even", "Z"),
    ("U", "odd", "Z"),
    (figure_eight, "even", "Q"),
)

# {(i, j): (rank, torsion)} for each case defined above
expected = {
    (right_trefoil, "even", "Z"): {(0, 1): (1, []), (0, 3): (1, []), (2, 5): (1, []), (3, 7): (0, [2]), (3, 9): (1, [])},
    (right_trefoil, "odd", "Z"): {
        (0, 1): (1, []),
        (0, 3): (1, []),
        (2, 5): (1, []),
        (2, 7): (1, []),
        (3, 7): (1, []),
        (3, 9): (1, []),
    },
    (right_trefoil, "even", "F2"): {
        (0, 1): (1, []),
        (0, 3): (1, []),
        (2, 5): (1, []),
        (2, 7): (1, []),
        (3, 7): (1, []),
        (3, 9): (1, []),
    },
    (right_trefoil, "mod2", "F2"): {
        (0, 1): (1, []),
        (0, 3): (1, []),
        (2, 5): (1, []),
        (2, 7): (1, []),
        (3, 7): (1, []),
        (3, 9): (1, []),
    },
    (right_trefoil, "even", "Q"): {(0, 1): (1, []), (0, 3): (1, []), (2, 5): (1, []), (3, 9): (1, [])},
    (left_trefoil, "even", "Z"): {
        (0, -1): (1, []),
        (0, -3): (1, []),
        (-2, -5): (1, []),
        (-2, -7): (0, [2]),
        (-3, -9): (1, []),
    },
    ("U", "even", "Z"): {(0, -1): (1, []), (0, 1): (1, [])},
    ("U", "odd", "Z"): {(0, -1): (1, []), (0, 1): (1, [])},
    (figure_eight, "even", "Q"): {
        (-2, -5): (1, []),
        (-1, -1): (1, []),
        (0, -1): (1, []),
        (0, 1): (1, []),
        (1, 1): (1, []),
        (2, 5): (1, []),
    },
}

reduced_cases = ((right_trefoil, "even"), (right_trefoil, "odd"), (figure_eight, "odd"), (figure_eight, "even"))

# Reduced homology ranks at basepoint 1, all torsion-free
expected_reduced = {
    (right_trefoil, "even"): {(0, 2): 1, (2, 6): 1, (3, 8): 1},
    (right_trefoil, "odd"): {(0, 2): 1, (2, 6): 1, (3, 8): 1},
    (figure_eight, "even"): {(-2, -4): 1, (-1, -2): 1, (0, 0): 1, (1, 2): 1, (2, 4): 1},
    (figure_eight, "odd"): {(-2, -4): 1, (-1, -2): 1, (0, 0): 1, (1, 2): 1, (2, 4): 1},
}


def signature(groups):
    return {ij: (g.rank, list(g.torsion)) for ij, g in groups.items()}


@pytest.mark.parametrize("case", cases)
def test_homology(case):
    (pd, theory, coefficient) = case
    c = build_complex(load_diagram(pd), theory)
    assert signature(homology(c, coefficient)) == expected[case]


@pytest.mark.parametrize("case", reduced_cases)
def test_reduced_homology(case):
    (pd, theory) = case
    c = reduced_subcomplex(build_complex(load_diagram(pd), theory), 1)
    groups = homology(c)
    assert {ij: g.rank for ij, g in groups.items()} == expected_reduced[case]
    assert all(not g.torsion for g in groups.values())


@pytest.mark.parametrize("pd", (right_trefoil, figure_eight, "PD[X(1,4,2,3),X(3,2,4,1)]"))
@pytest.mark.parametrize("theory", ("even", "odd"))
def test_euler_characteristic(pd, theory):
    c = build_complex(load_diagram(pd), theory)
    assert euler_from_homology(homology(c)) == c.euler_characteristic()


def test_parallel_matches_serial():
    c = build_complex(load_diagram(figure_eight), "odd")
    assert signature(homology(c, jobs=2)) == signature(homology(c, jobs=1))


@pytest.mark.parametrize("theory", ("even", "odd"))
def test_universal_coefficients(theory):
    c = build_complex(load_diagram(figure_eight), theory)
    assert all(universal_coefficients_check(c).values())


def test_bockstein_detects_torsion():
    c = build_complex(load_diagram(right_trefoil), "even")
    beta = bockstein(c, 2, 7)
    assert beta.shape == (1, 1)
    assert int(beta[0, 0]) % 2 == 1
    assert bockstein_squares_vanish(c)


def test_odd_bockstein_vanishes_on_trefoil():
    c = build_complex(load_diagram(right_trefoil), "odd")
    for i, j in c.bigradings():
        assert not any(int(x) % 2 for x in bockstein(c, i, j).flat)


def test_unified_needs_integers():
    c = build_complex(load_diagram(right_trefoil), "unified")
    with pytest.raises(ValueError):
        bockstein(c, 0, 1)


def congruent(matrix, expected, orders) -> bool:
    for r, row in enumerate(matrix):
        for k, x in enumerate(row):
            diff = int(x) - int(expected[r][k])
            if (orders[r] and diff % orders[r]) or (not orders[r] and diff):
                return False
    return True


def test_representatives_are_cycles():
    c = build_complex(load_diagram(right_trefoil), "even")
    for i, j in c.bigradings():
        group = homology_at(c, i, j)
        if group.number_of_generators:
            assert not (c.differential(i, j).astype(object) @ group.generators).any()


def test_induced_identity():
    c = build_complex(load_diagram(right_trefoil), "even")
    f = identity_map(c)
    for i, j in c.bigradings():
        group = homology_at(c, i, j)
        m = induced_map(f, i, j)
        assert congruent(m, np.eye(group.number_of_generators, dtype=int), group.orders)


def test_doubling_kills_torsion():
    c = build_complex(load_diagram(right_trefoil), "even")
    f = ChainMap(c, c, {ij: 2 * np.eye(c.rank(*ij), dtype=np.int64) for ij in c.bigradings()}, name="2")
    assert homology_at(c, 3, 7).torsion == [2]
    assert int(induced_map(f, 3, 7)[0, 0]) == 0
    assert int(induced_map(f, 3, 9)[0, 0]) == 2


def test_xi_squares_to_one():
    c = build_complex(load_diagram(right_trefoil), "unified")
    for i, j in c.bigradings():
        group = homology_at(c, i, j)
        if not group.number_of_generators:
            continue
        xi = xi_action_on_homology(c, i, j)
        n = group.number_of_generators
        assert congruent(xi @ xi, np.eye(n, dtype=int), group.orders)


def test_xi_needs_unified():
    with pytest.raises(ValueError):
        xi_action_on_homology(build_complex(load_diagram(right_trefoil), "odd"), 0, 1)
