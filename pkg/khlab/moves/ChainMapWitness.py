import logging
from dataclasses import dataclass, field

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.ChainMap import ChainMap
from khlab.datatypes import Bigrading, Constants
from khlab.homology.homology import is_quasi_isomorphism

logger = logging.getLogger(__name__)


@dataclass
class ChainMapWitness:
    """! A chain map together with what has been verified about it.

    `is_quasi_iso` is None when not checked. `canonical` marks maps obtained through minimal models
    rather than through explicit cancellations. A composite keeps its factors in `parts`.
    """

    chain_map: ChainMap
    kind: str
    is_chain_map: bool
    is_quasi_iso: bool | None = None
    canonical: bool = False
    parts: list["ChainMapWitness"] = field(default_factory=list)

    @staticmethod
    def certify(
        f: ChainMap, kind: str, check_quasi_iso: bool = False, canonical: bool = False, parts=None
    ) -> "ChainMapWitness":
        """! Check f∂ = ∂f and, on request, that the mapping cone of f is acyclic"""
        commutes = f.is_chain_map()
        quasi_iso = None
        if check_quasi_iso:
            quasi_iso = commutes and is_quasi_isomorphism(f, Constants.F2 if f.mod2 else Constants.Z)
        if not commutes:
            logger.warning("%s map %s fails to commute at %s", kind, f.name, f.failures())
        return ChainMapWitness(f, kind, commutes, quasi_iso, canonical, list(parts or []))

    @property
    def source(self) -> BigradedComplex:
        return self.chain_map.source

    @property
    def target(self) -> BigradedComplex:
        return self.chain_map.target

    @property
    def shift(self) -> Bigrading:
        return self.chain_map.shift

    def then(self, outer: "ChainMapWitness", kind: str | None = None) -> "ChainMapWitness":
        """! outer ∘ self; flags are the conjunction of the factors' flags"""
        quasi_iso = None
        if self.is_quasi_iso is not None and outer.is_quasi_iso is not None:
            quasi_iso = self.is_quasi_iso and outer.is_quasi_iso
        return ChainMapWitness(
            outer.chain_map.compose(self.chain_map),
            kind or f"{self.kind}, {outer.kind}",
            self.is_chain_map and outer.is_chain_map,
            quasi_iso,
            self.canonical or outer.canonical,
            (self.parts or [self]) + (outer.parts or [outer]),
        )

    def dual(self, kind: str | None = None) -> "ChainMapWitness":
        """! The transpose map between the dual complexes, running from target to source"""
        f = self.chain_map.transpose()
        parts = [p.dual() for p in reversed(self.parts)]
        return ChainMapWitness(f, kind or f"{self.kind}*", f.is_chain_map(), self.is_quasi_iso, self.canonical, parts)

    def reduce_mod2(self) -> "ChainMapWitness":
        f = self.chain_map.reduce_mod2()
        return ChainMapWitness(f, self.kind, f.is_chain_map(), self.is_quasi_iso, self.canonical)

    def __str__(self):
        return f"{self.kind}: {self.source.name} -> {self.target.name}, shift {self.shift}"

    def __jsonrepr__(self):
        return {
            "kind": self.kind,
            "source": self.source.name,
            "target": self.target.name,
            "shift": list(self.shift),
            "is_chain_map": self.is_chain_map,
            "is_quasi_iso": self.is_quasi_iso,
            "canonical": self.canonical,
        }
