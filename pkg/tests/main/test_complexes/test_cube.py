import pytest

from khlab.cube.Cochain import EdgeAssignmentException, coboundary, faces, indicator, solve_coboundary
from khlab.cube.CubeVertex import CubeVertex, edge_coordinate, standard_sign
from khlab.datatypes import Constants
from khlab.io.DiagramParser import load_diagram
from khlab.resolution.Resolution import resolve
from khlab.resolution.ResolutionCube import ResolutionCube

diagrams = (
    "PD[X(1,4,2,3),X(3,2,4,1)]",
    "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]",
    "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]",
    "PD[X(1,2,3,3),X(2,1,4,4)]",
)


def test_face_counts():
    assert len(faces(3, 0)) == 8
    assert len(faces(3, 1)) == 12
    assert len(faces(3, 2)) == 6
    assert len(faces(4, 2)) == 24


def test_vertex_order():
    u, v = CubeVertex.from_bits((1, 1, 0)), CubeVertex.from_bits((1, 0, 0))
    assert u.covers(v)
    assert not v.covers(u)
    assert edge_coordinate(u.value, v.value) == 1
    assert standard_sign(u.value, v.value) == 1
    assert standard_sign(0b011, 0b010) == 0
    with pytest.raises(ValueError):
        edge_coordinate(0b011, 0b100)


def test_coboundary_squares_to_zero():
    for vertex in faces(3, 0):
        assert coboundary(coboundary(indicator(3, 0, vertex))).is_zero()


def test_unsolvable_constraints():
    # the boundary of the 3-cube cannot carry a single ξ
    target = {square: int(k == 0) for k, square in enumerate(faces(3, 2))}
    with pytest.raises(EdgeAssignmentException):
        solve_coboundary(3, target)


def test_trefoil_resolutions():
    d = load_diagram("PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]")
    assert resolve(d, 0).number_of_circles == 2
    assert resolve(d, 0b111).number_of_circles == 3
    assert all(resolve(d, v).number_of_circles == 1 for v in (0b001, 0b010, 0b100))


@pytest.mark.parametrize("pd", diagrams)
def test_edge_assignment_meets_face_types(pd):
    cube = ResolutionCube(load_diagram(pd))
    constraints = cube.psi_constraints()
    epsilon = cube.edge_assignment()
    delta = coboundary(epsilon)
    assert all(delta[square] == value for square, value in constraints.items())
    types = {cube.classify(square) for square in faces(cube.n, 2)}
    assert types <= {Constants.FACE_A, Constants.FACE_C, Constants.FACE_XY}


def test_least_assignment_is_zero_without_a_faces():
    cube = ResolutionCube(load_diagram("PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]"))
    if not any(cube.psi_constraints().values()):
        assert cube.edge_assignment().is_zero()
