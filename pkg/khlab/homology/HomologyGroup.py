from dataclasses import dataclass, field

import numpy as np

from khlab.datatypes import Coefficient, Constants


@dataclass
class HomologyGroup:
    """! One bigraded homology group ℤ^rank ⊕ ⊕ ℤ/t (or a vector space of dimension rank over a field).

    When representatives were computed, `generators` holds one cycle per column (torsion classes first,
    in the order of `torsion`, then free classes) and `projector` sends a cycle to its coordinates along
    those classes; coordinates of torsion classes are meaningful modulo `orders`.
    """

    i: int
    j: int
    coefficient: Coefficient
    rank: int
    torsion: list[int] = field(default_factory=list)
    generators: np.ndarray | None = None
    projector: np.ndarray | None = None

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"Torsion {self.torsion} at {(self.i, self.j)} is not a divisibility chain")
        if any(t < 2 for t in self.torsion):
            raise ValueError(f"Invariant factors below 2 in {self.torsion}")

    @property
    def bigrading(self) -> tuple[int, int]:
        return self.i, self.j

    @property
    def orders(self) -> list[int]:
        """! Order of each generator class, 0 for free classes"""
        if self.coefficient == Constants.F2:
            return [2] * self.rank
        return list(self.torsion) + [0] * self.rank

    @property
    def number_of_generators(self) -> int:
        return len(self.orders)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def even_torsion(self) -> int:
        return sum(1 for t in self.torsion if t % 2 == 0)

    def class_of(self, cycle: np.ndarray) -> np.ndarray:
        """! Coordinates of a cycle's class, reduced modulo the class orders"""
        if self.projector is None:
            raise ValueError(f"Homology at {self.bigrading} was computed without representatives")
        coords = self.projector @ np.asarray(cycle, dtype=object)
        return np.array([int(c) % o if o else int(c) for c, o in zip(coords, self.orders)], dtype=object)

    def describe(self) -> str:
        ring = "F2" if self.coefficient == Constants.F2 else ("Q" if self.coefficient == Constants.Q else "Z")
        parts = [f"{ring}^{self.rank}" if self.rank > 1 else ring] if self.rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    def __str__(self):
        return f"H^{{{self.i},{self.j}}} = {self.describe()}"

    def __jsonrepr__(self):
        return {"i": self.i, "j": self.j, "rank": self.rank, "torsion": list(self.torsion)}
