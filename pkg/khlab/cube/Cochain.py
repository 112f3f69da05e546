import logging
from itertools import combinations
from typing import Any, Sequence

import numpy as np

from khlab.homology.linalg import f2_solve
from khlab.utils import bits_of

logger = logging.getLogger(__name__)

Face = tuple[int, ...]


class EdgeAssignmentException(Exception):
    pass


def faces(n: int, d: int) -> list[Face]:
    """! All degree-d faces of the n-cube in lexicographic order of their bit tuples.

    A vertex is `(u,)`, an edge `(u, v)` with u ≥₁ v and a square `(u, v, v2, w)` where v and v2
    are the intermediate vertices, v keeping the lower of the two coordinates of u.
    """
    if not 0 <= d <= 2:
        raise ValueError(f"Degree {d} faces are not supported")
    result: list[Face] = []
    for u in range(1 << n):
        ones = [k for k in range(n) if u >> k & 1]
        match d:
            case 0:
                result.append((u,))
            case 1:
                result.extend((u, u ^ (1 << k)) for k in ones)
            case 2:
                for i, j in combinations(ones, 2):
                    result.append((u, u ^ (1 << j), u ^ (1 << i), u ^ (1 << i) ^ (1 << j)))
    return sorted(result, key=lambda f: tuple(bits_of(x, n) for x in (f[0], f[-1])))


def square_edges(square: Face) -> tuple[Face, Face, Face, Face]:
    u, v, v2, w = square
    return (u, v), (v, w), (u, v2), (v2, w)


class Cochain:
    """! Cellular cochain on the n-cube with 𝔽₂ values; value 1 stands for ξ, 0 for 1"""

    def __init__(self, n: int, degree: int, values: dict[Face, int] | None = None):
        self.n = n
        self.degree = degree
        self.domain = faces(n, degree)
        domain = set(self.domain)
        self.values: dict[Face, int] = {f: 0 for f in self.domain}
        for face, value in (values or {}).items():
            if face not in domain:
                raise ValueError(f"{face} is not a degree-{degree} face of the {n}-cube")
            self.values[face] = int(value) % 2

    def __getitem__(self, face: Face) -> int:
        return self.values[face]

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Cochain) and (self.n, self.degree, self.values) == (other.n, other.degree, other.values)

    def __add__(self, other: "Cochain") -> "Cochain":
        if (self.n, self.degree) != (other.n, other.degree):
            raise ValueError("Cochains of different cubes or degrees")
        return Cochain(self.n, self.degree, {f: self[f] ^ other[f] for f in self.domain})

    def support(self) -> list[Face]:
        return [f for f in self.domain if self.values[f]]

    def is_zero(self) -> bool:
        return not self.support()

    def __jsonrepr__(self):
        return {"degree": self.degree, "support": [list(f) for f in self.support()]}


def indicator(n: int, degree: int, face: Face) -> Cochain:
    return Cochain(n, degree, {face: 1})


def coboundary(c: Cochain) -> Cochain:
    match c.degree:
        case 0:
            return Cochain(c.n, 1, {(u, v): c[(u,)] ^ c[(v,)] for u, v in faces(c.n, 1)})
        case 1:
            return Cochain(c.n, 2, {sq: sum(c[e] for e in square_edges(sq)) % 2 for sq in faces(c.n, 2)})
        case _:
            raise ValueError(f"Coboundary of a degree-{c.degree} cochain is not supported")


def solve_coboundary(
    n: int,
    target: dict[Face, int],
    variable_order: Sequence[Face] | None = None,
    fixed: dict[Face, int] | None = None,
) -> Cochain:
    """! Find a 1-cochain ε with (δε)(f) = target(f) on every constrained square f.

    Squares missing from `target` are free. Elimination runs left to right over the edges in
    `variable_order` (lexicographic by default) and every free variable is set to 0, so the
    first edges carry the nonzero values.
    @param fixed: edges whose values are prescribed
    @raise EdgeAssignmentException: the constraints cannot be met
    """
    edges = list(variable_order) if variable_order is not None else faces(n, 1)
    fixed = dict(fixed or {})
    unknown = [e for e in edges if e not in fixed]
    column = {e: k for k, e in enumerate(unknown)}
    squares = [sq for sq in target]
    a = np.zeros((len(squares), len(unknown)), dtype=np.uint8)
    b = np.zeros(len(squares), dtype=np.uint8)
    for row, sq in enumerate(squares):
        rhs = target[sq] % 2
        for e in square_edges(sq):
            if e in fixed:
                rhs ^= fixed[e] % 2
            else:
                a[row, column[e]] ^= 1
        b[row] = rhs
    solution = f2_solve(a, b)
    if solution is None:
        raise EdgeAssignmentException(f"No edge assignment on the {n}-cube meets {len(squares)} face constraints")
    values = dict(fixed)
    values.update({e: int(solution[column[e]]) for e in unknown})
    result = Cochain(n, 1, values)
    delta = coboundary(result)
    for sq, value in target.items():
        if delta[sq] != value % 2:
            raise EdgeAssignmentException(f"Solved edge assignment violates square {sq}")
    logger.debug("Edge assignment on the %d-cube has support %s", n, result.support())
    return result
