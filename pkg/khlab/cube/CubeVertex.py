from typing import Any

from khlab.utils import bits_of, popcount


class CubeVertex:
    """! Vertex of the cube {0,1}^n, stored as an integer whose bit i is coordinate i+1"""

    def __init__(self, value: int, n: int):
        if not 0 <= value < (1 << n):
            raise ValueError(f"{value} is not a vertex of the {n}-cube")
        self.value = value
        self.n = n

    @staticmethod
    def from_bits(bits: tuple[int, ...] | list[int]) -> "CubeVertex":
        value = sum(1 << i for i, b in enumerate(bits) if b)
        return CubeVertex(value, len(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        return bits_of(self.value, self.n)

    @property
    def grading(self) -> int:
        return popcount(self.value)

    def __ge__(self, other: "CubeVertex") -> bool:
        return self.value & other.value == other.value

    def __le__(self, other: "CubeVertex") -> bool:
        return other >= self

    def covers(self, other: "CubeVertex") -> bool:
        """! u ≥₁ v: u ≥ v and the gradings differ by one"""
        return self >= other and self.grading - other.grading == 1

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, CubeVertex) and (self.value, self.n) == (other.value, other.n)

    def __hash__(self):
        return hash((self.value, self.n))

    def __str__(self):
        return "".join(str(b) for b in self.bits)

    def __repr__(self):
        return f"CubeVertex({self})"

    def __jsonrepr__(self):
        return list(self.bits)


def edge_coordinate(u: int, v: int) -> int:
    """! The coordinate (0-based) in which u ≥₁ v differ
    @raise ValueError: (u, v) is not a cube edge
    """
    diff = u ^ v
    if v & ~u or popcount(diff) != 1:
        raise ValueError(f"({u:b}, {v:b}) is not an edge u ≥₁ v")
    return diff.bit_length() - 1


def standard_sign(u: int, v: int) -> int:
    """! s(u, v) = Σ_{i<k} u_i mod 2 for the edge u ≥₁ v differing in coordinate k"""
    k = edge_coordinate(u, v)
    return popcount(u & ((1 << k) - 1)) % 2


def is_edge(u: int, v: int) -> bool:
    return not v & ~u and popcount(u ^ v) == 1
