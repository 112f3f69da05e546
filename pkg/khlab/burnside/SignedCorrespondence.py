from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Hashable

import numpy as np


class CoherenceException(Exception):
    pass


@dataclass
class SignedCorrespondence:
    """! A finite set with source, target and sign maps: a 1-morphism of the signed Burnside category.

    `elements[a] = (s(a), t(a), σ(a))`; sources live in the object at vertex `source`, targets in the object
    at vertex `target`.
    """

    source: int
    target: int
    elements: dict[Hashable, tuple[Hashable, Hashable, int]] = field(default_factory=dict)

    def __len__(self):
        return len(self.elements)

    def add(self, element: Hashable, s: Hashable, t: Hashable, sign: int):
        if sign not in (1, -1):
            raise ValueError(f"Sign of {element} must be +1 or -1, got {sign}")
        self.elements[element] = (s, t, sign)

    def then(self, other: "SignedCorrespondence") -> "SignedCorrespondence":
        """! Composite `other ∘ self` as the fiber product over the middle set, signs multiplied"""
        if self.target != other.source:
            raise ValueError(f"Cannot compose a correspondence into {self.target} with one out of {other.source}")
        starting: dict[Hashable, list[Hashable]] = defaultdict(list)
        for b, (s, _, _) in other.elements.items():
            starting[s].append(b)
        result = SignedCorrespondence(self.source, other.target)
        for a, (s, t, sign) in self.elements.items():
            for b in starting.get(t, []):
                _, tb, sign_b = other.elements[b]
                result.elements[(a, b)] = (s, tb, sign * sign_b)
        return result

    def fibers(self) -> dict[tuple[Hashable, Hashable], list[Hashable]]:
        """! A_{x,y}: the elements with source x and target y"""
        result: dict[tuple[Hashable, Hashable], list[Hashable]] = defaultdict(list)
        for a, (s, t, _) in self.elements.items():
            result[(s, t)].append(a)
        return dict(result)

    def sign(self, element: Hashable) -> int:
        return self.elements[element][2]

    def multiplicity(self, x: Hashable, y: Hashable) -> int:
        return sum(sign for s, t, sign in self.elements.values() if (s, t) == (x, y))

    def abelianize(self, sources: list[Hashable], targets: list[Hashable]) -> np.ndarray:
        """! Matrix of x ↦ Σ σ(a) t(a), rows indexed by targets and columns by sources"""
        rows = {g: k for k, g in enumerate(targets)}
        cols = {g: k for k, g in enumerate(sources)}
        matrix = np.zeros((len(targets), len(sources)), dtype=np.int64)
        for s, t, sign in self.elements.values():
            matrix[rows[t], cols[s]] += sign
        return matrix

    ## New correspondences
    def restrict(self, keep: Callable[[Hashable], bool]) -> "SignedCorrespondence":
        return SignedCorrespondence(
            self.source, self.target, {a: e for a, e in self.elements.items() if keep(e[0]) and keep(e[1])}
        )

    def rescaled(self, zeta: Callable[[Hashable], int]) -> "SignedCorrespondence":
        return SignedCorrespondence(
            self.source, self.target, {a: (s, t, sign * zeta(s) * zeta(t)) for a, (s, t, sign) in self.elements.items()}
        )

    def unsigned(self) -> "SignedCorrespondence":
        return SignedCorrespondence(self.source, self.target, {a: (s, t, 1) for a, (s, t, _) in self.elements.items()})

    def relabelled(self, source: int, target: int, label: Callable[[Hashable], Hashable]) -> "SignedCorrespondence":
        return SignedCorrespondence(
            source, target, {label(a): (label(s), label(t), sign) for a, (s, t, sign) in self.elements.items()}
        )

    def check(self, sources: set, targets: set):
        """! @raise CoherenceException: an element leaves the source or target object"""
        for a, (s, t, _) in self.elements.items():
            if s not in sources or t not in targets:
                raise CoherenceException(f"Element {a} of {self.source} -> {self.target} runs {s} -> {t} outside its sets")

    def to_text(self) -> str:
        lines = [f"edge {self.source:b} -> {self.target:b}"]
        lines += [f"  {s} -> {t}, {'+' if sign > 0 else '-'}" for s, t, sign in sorted(self.elements.values())]
        return "\n".join(lines)
