import logging
from typing import Any, Iterable

from khlab.algebra.RingElem import RingElem
from khlab.datatypes import Constants, Monomial, Theory

logger = logging.getLogger(__name__)


class AlgebraElement:
    """! ℤ_u-linear combination of sorted circle monomials in Λ_u(S).

    Monomials are strictly ascending tuples of circle ids; zero coefficients are never stored.
    """

    def __init__(self, terms: dict[Monomial, RingElem] | None = None, theory: Theory = Constants.UNIFIED):
        self.theory = theory
        self.terms: dict[Monomial, RingElem] = {}
        for monomial, coeff in (terms or {}).items():
            self.add_term(monomial, coeff)

    @staticmethod
    def from_monomial(monomial: Iterable[int], theory: Theory = Constants.UNIFIED) -> "AlgebraElement":
        return normalize(tuple(monomial), RingElem.one(theory))

    def add_term(self, monomial: Monomial, coeff: RingElem):
        if coeff.theory != self.theory:
            raise ValueError(f"Coefficient of theory {coeff.theory} added to {self.theory} element")
        total = self.terms.get(monomial, RingElem.zero(self.theory)) + coeff
        if total.is_zero():
            self.terms.pop(monomial, None)
        else:
            self.terms[monomial] = total

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        result = AlgebraElement(dict(self.terms), self.theory)
        for monomial, coeff in other.terms.items():
            result.add_term(monomial, coeff)
        return result

    def __mul__(self, scalar: RingElem) -> "AlgebraElement":
        return AlgebraElement({m: c * scalar for m, c in self.terms.items()}, self.theory)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, AlgebraElement) and self.theory == other.theory and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def specialize(self, theory: Theory) -> "AlgebraElement":
        return AlgebraElement({m: c.specialize(theory) for m, c in self.terms.items()}, theory)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})·{list(m)}" for m, c in sorted(self.terms.items()))

    def __repr__(self):
        return str(self)


def permutation_parity(word: Iterable[int]) -> int:
    """! Parity of the permutation sorting `word` (number of inversions mod 2)"""
    w = list(word)
    inversions = sum(1 for i in range(len(w)) for k in range(i + 1, len(w)) if w[i] > w[k])
    return inversions % 2


def normalize(word: Iterable[int], coeff: RingElem) -> AlgebraElement:
    """! Bring the tensor word x_1⊗...⊗x_k to its sorted monomial.
    @param word: circle ids in tensor order
    @param coeff: coefficient of the word
    @return zero if a circle repeats (x⊗x = 0), else the sorted monomial times coeff·ξ^parity
    """
    w = tuple(word)
    if len(set(w)) != len(w):
        return AlgebraElement(theory=coeff.theory)
    sign = RingElem.xi_power(permutation_parity(w), coeff.theory)
    return AlgebraElement({tuple(sorted(w)): coeff * sign}, coeff.theory)


def merge(x: AlgebraElement, a1: int, a2: int, a: int, relabel: dict[int, int]) -> AlgebraElement:
    """! Algebra map sending a1 and a2 to a, other circles through relabel"""
    result = AlgebraElement(theory=x.theory)
    for monomial, coeff in x.terms.items():
        word = [a if c in (a1, a2) else relabel[c] for c in monomial]
        result = result + normalize(word, coeff)
    return result


def split(
    x: AlgebraElement, a: int, a1: int, a2: int, relabel: dict[int, int], embed_to: int | None = None
) -> AlgebraElement:
    """! Split a into (a1, a2) with the surgery arc pointing from a1 to a2: y ↦ (a1 + ξa2)⊗ι(y).
    @param embed_to: image of a under the embedding ι, a1 by default (a2 gives the same result)
    """
    embed_to = a1 if embed_to is None else embed_to
    if embed_to not in (a1, a2):
        raise ValueError(f"Embedding target {embed_to} is neither {a1} nor {a2}")
    one = RingElem.one(x.theory)
    xi = RingElem.xi_power(1, x.theory)
    result = AlgebraElement(theory=x.theory)
    for monomial, coeff in x.terms.items():
        word = [embed_to if c == a else relabel[c] for c in monomial]
        result = result + normalize([a1] + word, coeff * one) + normalize([a2] + word, coeff * xi)
    return result
