"""Gaussian elimination of unit entries in a chain complex.

Cancelling an entry u = ∂(x → y) with u = ±1 removes x and y and replaces every entry a → b by
∂(a → b) - ∂(a → y)·u·∂(x → b). The reduced complex is chain homotopy equivalent to the original; the
projection and inclusion realizing the equivalence are tracked step by step.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable

import numpy as np

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.ChainMap import ChainMap
from khlab.datatypes import Bigrading

logger = logging.getLogger(__name__)

Vector = dict[Hashable, int]


class CancellationException(Exception):
    pass


@dataclass
class Cancellation:
    """! One elimination step, with the rows and columns of the unit entry as they were when it was cancelled"""

    x: Hashable
    y: Hashable
    unit: int
    # ∂x without its y component
    beta: Vector = field(default_factory=dict)
    # coefficient of y in ∂a, for a ≠ x
    alpha: Vector = field(default_factory=dict)


class Elimination:
    """! Mutable sparse copy of a complex on which unit entries are cancelled one at a time"""

    def __init__(self, c: BigradedComplex):
        self.source = c
        self.mod2 = c.is_mod2()
        self.grading: dict[Hashable, Bigrading] = {}
        self.order: dict[Hashable, int] = {}
        self.out: dict[Hashable, Vector] = {}
        self.into: dict[Hashable, Vector] = defaultdict(dict)
        for ij, gens in sorted(c.generators.items()):
            for g in gens:
                self.grading[g] = ij
                self.order[g] = len(self.order)
                self.out[g] = {}
        for (i, j), matrix in c.differentials.items():
            sources = c.generators[(i, j)]
            targets = c.generators[(i + c.degree, j)]
            for r, col in zip(*np.nonzero(matrix)):
                x, y = sources[int(col)], targets[int(r)]
                value = self._norm(int(matrix[r, col]))
                if value:
                    self.out[x][y] = value
                    self.into[y][x] = value
        self.steps: list[Cancellation] = []

    def _norm(self, value: int) -> int:
        return value % 2 if self.mod2 else value

    def is_unit(self, value: int) -> bool:
        return self._norm(value) in (1, -1)

    @property
    def alive(self) -> list[Hashable]:
        return sorted(self.out, key=self.order.__getitem__)

    def entry(self, x: Hashable, y: Hashable) -> int:
        return self.out.get(x, {}).get(y, 0)

    def cancel(self, x: Hashable, y: Hashable) -> Cancellation:
        """! Cancel the entry ∂(x → y)
        @raise CancellationException: the entry is not a unit or a generator is gone
        """
        if x not in self.out or y not in self.out:
            raise CancellationException(f"Cannot cancel {x} -> {y}: generator already removed")
        u = self.entry(x, y)
        if not self.is_unit(u):
            raise CancellationException(f"Entry {x} -> {y} is {u}, not a unit")
        beta = {b: c for b, c in self.out[x].items() if b != y}
        alpha = {a: c for a, c in self.into[y].items() if a != x}
        for a, ca in alpha.items():
            row = self.out[a]
            for b, cb in beta.items():
                value = self._norm(row.get(b, 0) - ca * u * cb)
                if value:
                    row[b] = value
                    self.into[b][a] = value
                else:
                    row.pop(b, None)
                    self.into[b].pop(a, None)
        for g in (x, y):
            for b in self.out[g]:
                self.into[b].pop(g, None)
            for a in self.into[g]:
                self.out.get(a, {}).pop(g, None)
            del self.out[g]
            self.into.pop(g, None)
        step = Cancellation(x, y, u, beta, alpha)
        self.steps.append(step)
        return step

    def eliminate_all(self, among: Iterable[Hashable] | None = None) -> "Elimination":
        """! Greedily cancel unit entries until none is left, scanning generators in basis order
        @param among: restrict the cancelled pairs to these generators
        """
        allowed = None if among is None else set(among)
        progress = True
        while progress:
            progress = False
            for x in self.alive:
                if x not in self.out or (allowed is not None and x not in allowed):
                    continue
                for y in sorted(self.out[x], key=self.order.__getitem__):
                    if (allowed is None or y in allowed) and self.is_unit(self.out[x][y]):
                        self.cancel(x, y)
                        progress = True
                        break
        logger.debug("Eliminated %d pairs, %d generators left", len(self.steps), len(self.out))
        return self

    ## Tracked equivalences
    def project(self, vector: Vector) -> Vector:
        """! Image of a chain of the original complex in the reduced complex"""
        v = dict(vector)
        for step in self.steps:
            v.pop(step.x, None)
            cy = v.pop(step.y, 0)
            if cy:
                for b, cb in step.beta.items():
                    v[b] = self._norm(v.get(b, 0) - cy * step.unit * cb)
        return {g: c for g, c in v.items() if c}

    def include(self, vector: Vector) -> Vector:
        """! Image of a chain of the reduced complex in the original complex"""
        v = dict(vector)
        for step in reversed(self.steps):
            cx = sum(v.get(a, 0) * ca for a, ca in step.alpha.items())
            if cx:
                v[step.x] = self._norm(v.get(step.x, 0) - cx * step.unit)
        return {g: self._norm(c) for g, c in v.items() if self._norm(c)}

    def reduced_complex(self) -> BigradedComplex:
        generators: dict[Bigrading, list[Hashable]] = defaultdict(list)
        for g in self.alive:
            generators[self.grading[g]].append(g)
        c = self.source
        differentials = {}
        for (i, j), gens in generators.items():
            targets = generators.get((i + c.degree, j), [])
            if not targets:
                continue
            index = {g: k for k, g in enumerate(targets)}
            matrix = np.zeros((len(targets), len(gens)), dtype=np.int64)
            for col, x in enumerate(gens):
                for y, value in self.out[x].items():
                    matrix[index[y], col] = value
            differentials[(i, j)] = matrix
        return c._derived(
            BigradedComplex(
                c.theory, dict(generators), differentials, degree=c.degree, reduced=c.reduced, name=f"{c.name} eliminated"
            )
        )

    def projection(self, reduced: BigradedComplex) -> ChainMap:
        blocks = {}
        for (i, j), gens in self.source.generators.items():
            index = reduced.index(i, j)
            block = np.zeros((len(index), len(gens)), dtype=np.int64)
            for col, g in enumerate(gens):
                for h, value in self.project({g: 1}).items():
                    block[index[h], col] = value
            blocks[(i, j)] = block
        return ChainMap(self.source, reduced, blocks, name="projection")

    def inclusion(self, reduced: BigradedComplex) -> ChainMap:
        blocks = {}
        for (i, j), gens in reduced.generators.items():
            index = self.source.index(i, j)
            block = np.zeros((len(index), len(gens)), dtype=np.int64)
            for col, g in enumerate(gens):
                for h, value in self.include({g: 1}).items():
                    block[index[h], col] = value
            blocks[(i, j)] = block
        return ChainMap(reduced, self.source, blocks, name="inclusion")


def eliminate(c: BigradedComplex) -> tuple[BigradedComplex, Elimination]:
    """! Cancel every unit entry reachable greedily; the reduced complex has no unit left in its differential"""
    engine = Elimination(c).eliminate_all()
    return engine.reduced_complex(), engine
