import logging
import os
from typing import Any

from khlab.concordance.invariants import ConcordanceReport
from khlab.diagram.MovieScript import MovieScript
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.invariants.jones import JonesReport
from khlab.moves.movie import MovieReport
from khlab.reports import BurnsideReport, HomologyReport, VerificationReport
from khlab.stages.BurnsideStage import BurnsideStage
from khlab.stages.CobordismStage import CobordismStage
from khlab.stages.ComplexStage import ComplexStage
from khlab.stages.ConcordanceStage import ConcordanceStage
from khlab.stages.CorpusStage import CorpusStage
from khlab.stages.HomologyStage import HomologyStage
from khlab.stages.input_parser_stages import DiagramParserStage, MovieParserStage
from khlab.stages.JonesStage import JonesStage
from khlab.stages.MainStage import MainStage
from khlab.stages.reduce_stages import SummaryStage
from khlab.stages.save_stages import CompleteSaveStage, PickleSaveStage, SimpleSaveStage
from khlab.stages.Stage import StageCallable
from khlab.stages.VerifyStage import VerifyStage

LOGGING_FORMAT = "%(asctime)s - %(funcName)s +%(lineno)s - %(levelname)s - %(message)s"


def logging_level(default: int = logging.WARNING) -> int:
    """! Level named (or numbered) by KHLAB_LOG, the given default otherwise"""
    value = os.environ.get("KHLAB_LOG")
    if not value:
        return default
    if value.isdigit():
        return int(value)
    level = logging.getLevelName(value.upper())
    if not isinstance(level, int):
        raise ValueError(f"KHLAB_LOG={value} is not a logging level")
    return level


def init_logging(verbose: bool = False):
    logging.basicConfig(level=logging_level(logging.INFO if verbose else logging.WARNING), format=LOGGING_FORMAT)


def _with_save_stages(stages: list[StageCallable], dump_filename_pattern: str | None, complete: bool = False):
    if dump_filename_pattern is None:
        return stages
    return [CompleteSaveStage if complete else SimpleSaveStage] + stages


def get_homology(
    diagram: str | OrientedDiagram,
    theory: str = "even",
    coefficient: str = "Z",
    reduced: bool = False,
    basepoint: int | None = None,
    jobs: int = 1,
    dump_filename_pattern: str | None = None,
    output_format: str = "json",
    verbose: bool = False,
) -> tuple[HomologyReport, list[tuple[Any, Any]]]:
    """! Bigraded Khovanov homology of a diagram in the even, odd, unified or mod 2 theory"""
    init_logging(verbose)
    mainstage = MainStage(
        _with_save_stages(
            [
                DiagramParserStage,  # Parse the PD text, file or example name into a diagram
                ComplexStage,  # Build the (reduced) Khovanov complex
                HomologyStage,  # Smith normal forms per bigrading
            ],
            dump_filename_pattern,
        ),
        pd=diagram,
        theory=theory,
        coeff=coefficient,
        reduced=reduced,
        basepoint=basepoint,
        jobs=jobs,
        dump_filename_pattern=dump_filename_pattern,
        output_format=output_format,
        show_progress_bar=verbose,
    )
    answers = mainstage.run()
    return answers[0][0], answers


def get_jones(
    diagram: str | OrientedDiagram, dump_filename_pattern: str | None = None, verbose: bool = False
) -> tuple[JonesReport, list[tuple[Any, Any]]]:
    init_logging(verbose)
    mainstage = MainStage(
        _with_save_stages([DiagramParserStage, JonesStage], dump_filename_pattern),
        pd=diagram,
        dump_filename_pattern=dump_filename_pattern,
    )
    answers = mainstage.run()
    return answers[0][0], answers


def get_verification(
    diagram: str | OrientedDiagram | None = None,
    suite: str = "all",
    seed: int = 0,
    corpus_size: int = 20,
    dump_filename_pattern: str | None = None,
    pickle_filename: str | None = None,
    verbose: bool = False,
) -> tuple[VerificationReport, list[tuple[Any, Any]]]:
    """! Run invariant suites on one diagram, or on the seeded corpus when no diagram is given"""
    init_logging(verbose)
    source: list[StageCallable] = [DiagramParserStage] if diagram is not None else [CorpusStage]
    stages: list[StageCallable] = [SummaryStage] + source + [VerifyStage]
    if pickle_filename is not None:
        stages = [PickleSaveStage] + stages
    mainstage = MainStage(
        _with_save_stages(stages, dump_filename_pattern),
        **({"pd": diagram} if diagram is not None else {"corpus_size": corpus_size}),
        suite=suite,
        seed=seed,
        dump_filename_pattern=dump_filename_pattern,
        pickle_filename=pickle_filename,
        show_progress_bar=verbose,
    )
    answers = mainstage.run()
    return answers[0][0], answers


def get_burnside(
    diagram: str | OrientedDiagram, dump_filename_pattern: str | None = None, verbose: bool = False
) -> tuple[BurnsideReport, list[tuple[Any, Any]]]:
    init_logging(verbose)
    mainstage = MainStage(
        _with_save_stages([DiagramParserStage, BurnsideStage], dump_filename_pattern, complete=True),
        pd=diagram,
        dump_filename_pattern=dump_filename_pattern,
        show_progress_bar=verbose,
    )
    answers = mainstage.run()
    return answers[0][0], answers


def get_cobordism(
    movie: str | MovieScript,
    diagram: str | OrientedDiagram | None = None,
    theory: str = "odd",
    dump_filename_pattern: str | None = None,
    verbose: bool = False,
) -> tuple[MovieReport, list[tuple[Any, Any]]]:
    """! Chain map of a movie; `diagram` is the start frame when the movie has no PD line"""
    init_logging(verbose)
    stages: list[StageCallable] = [MovieParserStage, CobordismStage]
    if diagram is not None:
        stages = [DiagramParserStage] + stages
    mainstage = MainStage(
        _with_save_stages(stages, dump_filename_pattern),
        **({"pd": diagram} if diagram is not None else {}),
        movie=movie,
        theory=theory,
        dump_filename_pattern=dump_filename_pattern,
    )
    answers = mainstage.run()
    return answers[0][0], answers


def get_concordance(
    diagram: str | OrientedDiagram,
    alpha: str = "bockstein_even",
    dump_filename_pattern: str | None = None,
    verbose: bool = False,
) -> tuple[ConcordanceReport, list[tuple[Any, Any]]]:
    init_logging(verbose)
    mainstage = MainStage(
        _with_save_stages([DiagramParserStage, ConcordanceStage], dump_filename_pattern),
        pd=diagram,
        alpha=alpha,
        dump_filename_pattern=dump_filename_pattern,
    )
    answers = mainstage.run()
    return answers[0][0], answers
