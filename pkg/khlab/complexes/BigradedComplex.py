import logging
from collections import defaultdict
from typing import Any, Callable, Hashable

import numpy as np

from khlab.datatypes import Bigrading, Constants, Theory
from khlab.utils import laurent_to_string

logger = logging.getLogger(__name__)


class BigradedComplex:
    """! Chain complex of free abelian groups (or 𝔽₂ vector spaces) split by bigrading (i, j).

    `generators[(i, j)]` is the ordered basis of the group in bigrading (i, j) and `differentials[(i, j)]`
    the integer matrix of the map into (i + degree, j), rows indexed by the target basis. Missing blocks
    are zero. The unified theory is stored over ℤ on the doubled basis, with `xi_action` giving ξ.
    """

    def __init__(
        self,
        theory: Theory,
        generators: dict[Bigrading, list[Hashable]],
        differentials: dict[Bigrading, np.ndarray] | None = None,
        *,
        degree: int = 1,
        xi_action: dict[Bigrading, np.ndarray] | None = None,
        reduced: bool = False,
        name: str = "",
    ):
        if degree not in (1, -1):
            raise ValueError(f"Differential degree must be 1 or -1, got {degree}")
        self.theory = theory
        self.generators = {ij: list(gens) for ij, gens in generators.items() if gens}
        self.degree = degree
        self.reduced = reduced
        self.name = name
        self.xi_action = xi_action
        self.differentials: dict[Bigrading, np.ndarray] = {}
        for (i, j), matrix in (differentials or {}).items():
            expected = (self.rank(i + degree, j), self.rank(i, j))
            if matrix.shape != expected:
                raise ValueError(f"Differential at {(i, j)} has shape {matrix.shape}, expected {expected}")
            if matrix.size and matrix.any():
                self.differentials[(i, j)] = matrix
        self._index: dict[Bigrading, dict[Hashable, int]] = {}
        # Diagram, cube of resolutions and edge assignment the complex was built from, when known
        self.diagram: Any = None
        self.cube: Any = None
        self.epsilon: Any = None

    def attach(self, diagram: Any, cube: Any = None, epsilon: Any = None) -> "BigradedComplex":
        self.diagram, self.cube, self.epsilon = diagram, cube, epsilon
        return self

    def _derived(self, c: "BigradedComplex") -> "BigradedComplex":
        return c.attach(self.diagram, self.cube, self.epsilon)

    ## Basis bookkeeping
    def bigradings(self) -> list[Bigrading]:
        return sorted(self.generators)

    def rank(self, i: int, j: int) -> int:
        return len(self.generators.get((i, j), []))

    def total_rank(self) -> int:
        return sum(len(g) for g in self.generators.values())

    def quantum_gradings(self) -> list[int]:
        return sorted({j for _, j in self.generators})

    def homological_range(self, j: int | None = None) -> list[int]:
        return sorted({i for i, jj in self.generators if j is None or jj == j})

    def index(self, i: int, j: int) -> dict[Hashable, int]:
        if (i, j) not in self._index:
            self._index[(i, j)] = {g: k for k, g in enumerate(self.generators.get((i, j), []))}
        return self._index[(i, j)]

    def locate(self, generator: Hashable) -> tuple[Bigrading, int]:
        for ij in self.generators:
            if generator in self.index(*ij):
                return ij, self.index(*ij)[generator]
        raise KeyError(f"{generator} is not a generator of {self.name or 'the complex'}")

    def differential(self, i: int, j: int) -> np.ndarray:
        if (i, j) in self.differentials:
            return self.differentials[(i, j)]
        return np.zeros((self.rank(i + self.degree, j), self.rank(i, j)), dtype=np.int64)

    def incoming(self, i: int, j: int) -> np.ndarray:
        """! Differential arriving in (i, j)"""
        return self.differential(i - self.degree, j)

    def is_mod2(self) -> bool:
        return self.theory == Constants.MOD2

    ## Checks
    def d_squared_failures(self) -> list[Bigrading]:
        """! Bigradings where ∂∘∂ does not vanish"""
        failures = []
        for i, j in self.bigradings():
            square = self.differential(i + self.degree, j) @ self.differential(i, j)
            if self.is_mod2():
                square = square % 2
            if square.any():
                failures.append((i, j))
        return failures

    def is_complex(self) -> bool:
        return not self.d_squared_failures()

    def is_closed(self, keep: Callable[[Hashable], bool]) -> bool:
        """! Whether the generators selected by keep span a subcomplex"""
        for (i, j), matrix in self.differentials.items():
            cols = [k for k, g in enumerate(self.generators[(i, j)]) if keep(g)]
            rows = [k for k, g in enumerate(self.generators.get((i + self.degree, j), [])) if not keep(g)]
            block = matrix[np.ix_(rows, cols)]
            if self.is_mod2():
                block = block % 2
            if block.any():
                return False
        return True

    ## Derived complexes
    def restrict(
        self, keep: Callable[[Hashable], bool], shift: Bigrading = (0, 0), name: str = "", reduced: bool | None = None
    ) -> "BigradedComplex":
        """! Sub-block of the complex on the selected generators, regraded by shift.

        This is a subcomplex when the selection is closed and a quotient complex when its complement is.
        """
        di, dj = shift
        generators = {}
        selected = {}
        for ij, gens in self.generators.items():
            positions = [k for k, g in enumerate(gens) if keep(g)]
            selected[ij] = positions
            generators[(ij[0] + di, ij[1] + dj)] = [gens[k] for k in positions]
        differentials = {}
        for (i, j), matrix in self.differentials.items():
            rows = selected.get((i + self.degree, j), [])
            differentials[(i + di, j + dj)] = matrix[np.ix_(rows, selected[(i, j)])]
        xi_action = None
        if self.xi_action is not None:
            xi_action = {
                (i + di, j + dj): m[np.ix_(selected[(i, j)], selected[(i, j)])] for (i, j), m in self.xi_action.items()
            }
        return self._derived(
            BigradedComplex(
                self.theory,
                generators,
                differentials,
                degree=self.degree,
                xi_action=xi_action,
                reduced=self.reduced if reduced is None else reduced,
                name=name or self.name,
            )
        )

    def quantum_slice(self, j: int) -> "BigradedComplex":
        return self.restrict_bigradings(lambda ij: ij[1] == j)

    def restrict_bigradings(self, keep: Callable[[Bigrading], bool]) -> "BigradedComplex":
        generators = {ij: g for ij, g in self.generators.items() if keep(ij)}
        differentials = {ij: m for ij, m in self.differentials.items() if keep(ij)}
        xi_action = None if self.xi_action is None else {ij: m for ij, m in self.xi_action.items() if keep(ij)}
        return self._derived(
            BigradedComplex(
                self.theory, generators, differentials, degree=self.degree, xi_action=xi_action, reduced=self.reduced
            )
        )

    def mod2(self) -> "BigradedComplex":
        if self.theory == Constants.UNIFIED:
            raise ValueError("The doubled unified complex has no mod 2 reduction as a Khovanov complex")
        return self._derived(
            BigradedComplex(
                Constants.MOD2,
                self.generators,
                {ij: m % 2 for ij, m in self.differentials.items()},
                degree=self.degree,
                reduced=self.reduced,
                name=f"{self.name} mod 2",
            )
        )

    def transpose(self) -> "BigradedComplex":
        """! Dual complex on the same bases: the differential out of (i, j) is the transpose of the one into it"""
        differentials = {(i + self.degree, j): m.T.copy() for (i, j), m in self.differentials.items()}
        xi_action = None if self.xi_action is None else {ij: m.T.copy() for ij, m in self.xi_action.items()}
        return self._derived(
            BigradedComplex(
                self.theory,
                self.generators,
                differentials,
                degree=-self.degree,
                xi_action=xi_action,
                reduced=self.reduced,
                name=f"{self.name} dual",
            )
        )

    def shift(self, di: int, dj: int) -> "BigradedComplex":
        return self.restrict(lambda g: True, (di, dj))

    def direct_sum(self, other: "BigradedComplex", tags: tuple[Any, Any] = (0, 1)) -> "BigradedComplex":
        """! Block sum; generators are tagged to stay distinct"""
        if (self.theory, self.degree) != (other.theory, other.degree):
            raise ValueError("Direct sum of complexes of different theories or degrees")
        generators: dict[Bigrading, list[Hashable]] = defaultdict(list)
        for tag, c in zip(tags, (self, other)):
            for ij, gens in c.generators.items():
                generators[ij] += [(tag, g) for g in gens]
        differentials = {}
        for i, j in set(self.differentials) | set(other.differentials):
            a, b = self.differential(i, j), other.differential(i, j)
            block = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
            block[: a.shape[0], : a.shape[1]] = a
            block[a.shape[0] :, a.shape[1] :] = b
            differentials[(i, j)] = block
        return BigradedComplex(self.theory, dict(generators), differentials, degree=self.degree)

    ## Euler characteristic
    def euler_characteristic(self) -> dict[int, int]:
        """! Σ (-1)^i rank q^j as {j: coefficient}; ranks of the unified theory are counted over ℤ_u"""
        divisor = 2 if self.theory == Constants.UNIFIED else 1
        result: dict[int, int] = defaultdict(int)
        for (i, j), gens in self.generators.items():
            result[j] += (-1) ** (i % 2) * (len(gens) // divisor)
        return {j: c for j, c in result.items() if c}

    def euler_string(self) -> str:
        return laurent_to_string(self.euler_characteristic())

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, BigradedComplex):
            return False
        if (self.theory, self.degree, self.generators) != (other.theory, other.degree, other.generators):
            return False
        return all(np.array_equal(self.differential(*ij), other.differential(*ij)) for ij in self.bigradings())

    def __str__(self):
        ranks = ", ".join(f"{ij}: {len(g)}" for ij, g in sorted(self.generators.items()))
        return f"BigradedComplex({self.name or self.theory}, {{{ranks}}})"

    def __repr__(self):
        return str(self)

    def __jsonrepr__(self):
        return {
            "theory": self.theory,
            "reduced": self.reduced,
            "ranks": [{"i": i, "j": j, "rank": self.rank(i, j)} for i, j in self.bigradings()],
        }
