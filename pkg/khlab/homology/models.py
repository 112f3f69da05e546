"""Minimal models of integral complexes.

A free complex over ℤ splits, after a change of basis in every bigrading, into pieces ℤ (a free class),
ℤ -t-> ℤ with t > 1 (a torsion class) and ℤ -1-> ℤ (contractible). The model keeps the first two kinds.
Two complexes with the same homology have isomorphic models, which gives an explicit quasi-isomorphism
source -> model -> model -> target.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.ChainMap import ChainMap
from khlab.datatypes import Bigrading
from khlab.homology.smith import identity, smith_normal_form, to_object

logger = logging.getLogger(__name__)

# (role, position in the split basis, torsion order or 0 for a free class)
Slot = tuple[str, int, int]


class ModelMismatchException(Exception):
    pass


@dataclass
class CanonicalModel:
    """! Split basis of a complex.

    `vectors[(ij, slot)]` is the basis column of a model generator and `functionals[(ij, slot)]` the row
    reading its coordinate. A "top" slot is a cycle; a "bottom" slot of order t maps onto t times the top
    slot with the same position one step further along the differential.
    """

    complex: BigradedComplex
    vectors: dict[tuple[Bigrading, Slot], np.ndarray] = field(default_factory=dict)
    functionals: dict[tuple[Bigrading, Slot], np.ndarray] = field(default_factory=dict)

    def classes(self) -> dict[tuple[Bigrading, str, int], list[Slot]]:
        """! Slots grouped by bigrading, role and torsion order, in basis order"""
        grouped: dict[tuple[Bigrading, str, int], list[Slot]] = {}
        for ij, slot in self.vectors:
            grouped.setdefault((ij, slot[0], slot[2]), []).append(slot)
        return grouped

    def signature(self) -> dict[Bigrading, tuple[int, list[int]]]:
        """! Free rank and sorted torsion orders of the homology in every bigrading"""
        result: dict[Bigrading, tuple[int, list[int]]] = {}
        for (ij, role, order), slots in self.classes().items():
            if role != "top":
                continue
            rank, torsion = result.get(ij, (0, []))
            if order:
                result[ij] = (rank, sorted(torsion + [order] * len(slots)))
            else:
                result[ij] = (rank + len(slots), torsion)
        return result


def _split_slice(c: BigradedComplex, j: int, model: CanonicalModel):
    delta = c.degree
    degrees = sorted((i for i, q in c.bigradings() if q == j), reverse=delta < 0)
    kernel, complement, to_kernel, to_complement = {}, {}, {}, {}
    for i in degrees:
        n = c.rank(i, j)
        d_out = c.differential(i, j)
        if d_out.size and d_out.any():
            form = smith_normal_form(d_out)
            r, v, v_inv = form.rank, form.v, form.v_inv
        else:
            r, v, v_inv = 0, identity(n), identity(n)
        complement[i], kernel[i] = v[:, :r], v[:, r:]
        to_complement[i], to_kernel[i] = v_inv[:r, :], v_inv[r:, :]

    for i in degrees:
        prev = i - delta
        k = kernel[i].shape[1]
        if prev in complement and complement[prev].shape[1]:
            # the differential is injective on the complement, so this has full column rank
            restricted = to_kernel[i] @ to_object(c.differential(prev, j)) @ complement[prev]
            form = smith_normal_form(restricted)
            p, p_inv, diagonal = form.u, form.u_inv, form.diagonal
            complement[prev] = complement[prev] @ form.v
            to_complement[prev] = form.v_inv @ to_complement[prev]
        else:
            p, p_inv, diagonal = identity(k), identity(k), []
        kernel[i] = kernel[i] @ p_inv
        to_kernel[i] = p @ to_kernel[i]
        for t in range(k):
            value = int(diagonal[t]) if t < len(diagonal) else 0
            order = abs(value)
            if order == 1:
                continue
            model.vectors[((i, j), ("top", t, order))] = kernel[i][:, t]
            model.functionals[((i, j), ("top", t, order))] = to_kernel[i][t, :]
            if order:
                sign = 1 if value > 0 else -1
                model.vectors[((prev, j), ("bottom", t, order))] = complement[prev][:, t] * sign
                model.functionals[((prev, j), ("bottom", t, order))] = to_complement[prev][t, :] * sign


def canonical_model(c: BigradedComplex) -> CanonicalModel:
    """! Split an integral complex into free, torsion and contractible pieces
    @raise ValueError: the complex is reduced mod 2
    """
    if c.is_mod2():
        raise ValueError(f"{c} is a mod 2 complex; models are built over ℤ")
    model = CanonicalModel(c)
    for j in c.quantum_gradings():
        _split_slice(c, j, model)
    logger.debug("Model of %s keeps %d of %d generators", c, len(model.vectors), c.total_rank())
    return model


def model_quasi_isomorphism(source: BigradedComplex, target: BigradedComplex, name: str = "model") -> ChainMap:
    """! A quasi-isomorphism source -> target through the canonical models.

    Free classes go to free classes and torsion pieces to torsion pieces of the same order, matched in
    basis order within every bigrading.
    @raise ModelMismatchException: the homology of the two complexes differs
    """
    if source.degree != target.degree:
        raise ModelMismatchException("The complexes run in opposite directions")
    first, second = canonical_model(source), canonical_model(target)
    a, b = first.classes(), second.classes()
    for key in set(a) | set(b):
        if len(a.get(key, [])) != len(b.get(key, [])):
            raise ModelMismatchException(f"Homology of {source} and {target} differs at {key[0]}")
    blocks: dict[Bigrading, np.ndarray] = {}
    for key, slots in a.items():
        ij = key[0]
        for s_slot, t_slot in zip(slots, b[key]):
            term = second.vectors[(ij, t_slot)].reshape(-1, 1) @ first.functionals[(ij, s_slot)].reshape(1, -1)
            blocks[ij] = blocks[ij] + term if ij in blocks else term
    logger.info("Model quasi-isomorphism %s -> %s through %d generators", source, target, len(first.vectors))
    return ChainMap(source, target, {ij: m.astype(np.int64) for ij, m in blocks.items()}, name=name)
