import logging
from typing import Any

import numpy as np

from khlab.burnside.coherence import check_hexagons, coproduct_check, doubling_check, forgetful_check, transpose_check
from khlab.burnside.SignedBurnsideFunctor import build_functor
from khlab.complexes.ChainMap import NotAChainMapException
from khlab.complexes.khovanov import build_complex
from khlab.complexes.sequences import (
    CheckReport,
    mod2_agreement,
    odd_splitting_check,
    reduced_ses_check,
    ses_even_unified_odd,
    theory_complexes,
    unified_pullback_check,
)
from khlab.datatypes import Constants
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.homology.homology import homology, universal_coefficients_check
from khlab.invariants.jones import jones_report
from khlab.io.corpus import CorpusEntry, r1_pairs, r2_pairs, with_random_basepoint
from khlab.moves.reidemeister import reidemeister_map
from khlab.reports import SuiteResult, VerificationReport
from khlab.stages.Stage import Stage, StageCallable

logger = logging.getLogger(__name__)

SUITES = ("d2", "mod2", "pullback", "ses", "splitting", "reduced", "uct", "burnside", "jones", "invariance")


def selected_suites(suite: str) -> list[str]:
    if suite == "all":
        return list(SUITES)
    names = [s.strip() for s in suite.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise NotImplementedError(f"Unknown verification suite(s) {unknown}; supported are {', '.join(SUITES)} or all")
    return names


def _add_check(result: SuiteResult, report: CheckReport):
    result.add(report.passed, report.checked, f"{report.name} fails at {report.failures()} {report.details}")


def _homology_signature(d: OrientedDiagram, theory) -> dict:
    return {ij: (g.rank, tuple(g.torsion)) for ij, g in homology(build_complex(d, theory)).items()}


def run_suite(name: str, d: OrientedDiagram, seed: int = 0) -> SuiteResult:
    """! Run one invariant suite on a diagram"""
    result = SuiteResult()
    match name:
        case "d2":
            for c in theory_complexes(d, Constants.EVEN, Constants.ODD, Constants.UNIFIED, Constants.MOD2):
                result.add(c.is_complex(), len(c.bigradings()), f"∂² ≠ 0 in {c.theory} at {c.d_squared_failures()}")
        case "mod2":
            _add_check(result, mod2_agreement(d))
        case "pullback":
            _add_check(result, unified_pullback_check(d))
        case "ses":
            for variant in ("e-u-o", "o-u-e"):
                try:
                    _add_check(result, ses_even_unified_odd(d, variant).exactness())
                except NotAChainMapException as exc:
                    result.add(False, 1, f"{variant}: {exc}")
        case "splitting":
            _add_check(result, odd_splitting_check(d))
        case "reduced":
            if d.edges:
                if d.basepoint is None:
                    d = with_random_basepoint(d, np.random.default_rng(seed))
                for theory in (Constants.EVEN, Constants.ODD):
                    _add_check(result, reduced_ses_check(build_complex(d, theory), d.basepoint))
        case "uct":
            for theory in (Constants.EVEN, Constants.ODD):
                checks = universal_coefficients_check(build_complex(d, theory))
                bad = [ij for ij, ok in checks.items() if not ok]
                result.add(not bad, len(checks), f"{theory} universal coefficients fail at {bad}")
        case "burnside":
            f = build_functor(d)
            hexagons = check_hexagons(f)
            result.add(hexagons.passed, hexagons.hexagons, "; ".join(hexagons.failures))
            result.add(transpose_check(f), 1, "Tot(F_o) differs from the dual odd complex")
            result.add(doubling_check(f), 1, "Tot(DF_o) differs from the dual unified complex")
            result.add(coproduct_check(f), 1, "Tot does not send coproducts to direct sums")
            _add_check(result, forgetful_check(f))
        case "jones":
            report = jones_report(d)
            result.add(report.match, 1, f"Jones {report.jones} vs Euler characteristic {report.euler}")
        case "invariance":
            entry = [CorpusEntry(str(d), d)]
            for pair in r1_pairs(entry, seed) + r2_pairs(entry, seed):
                for theory in (Constants.EVEN, Constants.ODD):
                    same = _homology_signature(pair.first, theory) == _homology_signature(pair.second, theory)
                    result.add(same, 1, f"{theory} homology changes under {pair.name}")
                    witness = reidemeister_map(pair.first, pair.step, theory)
                    explicit = bool(witness.is_quasi_iso) and not witness.canonical
                    result.add(explicit, 1, f"{theory} map of {pair.name} is not an explicit quasi-isomorphism")
        case _:
            raise NotImplementedError(f"Unknown verification suite {name}")
    return result


class VerifyStage(Stage):
    """! Leaf stage running the selected invariant suites on `diagram`"""

    def __init__(
        self,
        list_of_callables: list[StageCallable],
        *,
        diagram: OrientedDiagram,
        suite: str = "all",
        seed: int = 0,
        name: str | None = None,
        **kwargs: Any,
    ):
        super().__init__(list_of_callables, **kwargs)
        self.diagram = diagram
        self.suites = selected_suites(suite)
        self.seed = seed
        self.name = name or str(diagram)

    def is_leaf(self) -> bool:
        return True

    def run(self):
        report = VerificationReport(self.name)
        for suite in self.suites:
            report.suites[suite] = run_suite(suite, self.diagram, self.seed)
            logger.info(f"Suite {suite} on {self.name}: passed {report.suites[suite].passed}")
        yield report, None
