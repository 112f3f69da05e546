import argparse
import logging
import multiprocessing_on_dill as multiprocessing
import sys

from khlab.api import (
    get_burnside,
    get_cobordism,
    get_concordance,
    get_homology,
    get_jones,
    get_verification,
    logging_level,
)
from khlab.concordance.barnatan import NotAKnotException
from khlab.concordance.invariants import ALPHAS
from khlab.diagram.MovieScript import InvalidMovieException
from khlab.diagram.OrientedDiagram import InvalidDiagramException
from khlab.stages.save_stages import render
from khlab.stages.VerifyStage import SUITES

logger = logging.getLogger(__name__)

COMMANDS = ("homology", "reduced-homology", "jones", "verify", "burnside", "cobordism", "s")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="khlab", description="Even, odd and unified Khovanov homology of PD diagrams")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--pd", help="PD text, e.g. 'PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]', or an example name")
    parser.add_argument("--in", dest="input", metavar="path", help="file holding PD text")
    parser.add_argument("--theory", choices=("even", "odd", "unified", "mod2"), default=None)
    parser.add_argument("--coeff", choices=("Z", "F2", "Q"), default="Z")
    parser.add_argument("--reduced", action="store_true", help="reduced homology at the basepoint")
    parser.add_argument("--bp", type=int, default=None, metavar="edge", help="basepoint edge label")
    parser.add_argument("--out", metavar="path", default=None, help="write the result here instead of stdout")
    parser.add_argument("--format", choices=("json", "simple", "tsv"), default="json")
    parser.add_argument("--pretty", action="store_true", help="fixed-width homology table")
    parser.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)} or all")
    parser.add_argument("--jobs", type=int, default=multiprocessing.cpu_count())
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--corpus-size", type=int, default=20)
    parser.add_argument("--movie", metavar="path", help="movie script for cobordism")
    parser.add_argument("--alpha", choices=ALPHAS, default=ALPHAS[0])
    return parser


def diagram_argument(args: argparse.Namespace, parser: argparse.ArgumentParser, required: bool = True):
    if args.pd is not None and args.input is not None:
        parser.error("give either --pd or --in, not both")
    diagram = args.pd if args.pd is not None else args.input
    if diagram is None and required:
        parser.error(f"{args.command} needs a diagram: --pd or --in")
    return diagram


def run(args: argparse.Namespace, parser: argparse.ArgumentParser):
    output_format = "pretty" if args.pretty else args.format
    match args.command:
        case "homology" | "reduced-homology":
            report, _ = get_homology(
                diagram_argument(args, parser),
                theory=args.theory or "even",
                coefficient=args.coeff,
                reduced=args.reduced or args.command == "reduced-homology",
                basepoint=args.bp,
                jobs=args.jobs,
            )
        case "jones":
            report, _ = get_jones(diagram_argument(args, parser))
        case "verify":
            diagram = diagram_argument(args, parser, required=False)
            report, _ = get_verification(diagram, suite=args.suite, seed=args.seed, corpus_size=args.corpus_size)
        case "burnside":
            report, _ = get_burnside(diagram_argument(args, parser))
        case "cobordism":
            if args.movie is None:
                parser.error("cobordism needs --movie")
            report, _ = get_cobordism(args.movie, diagram_argument(args, parser, required=False), args.theory or "odd")
        case "s":
            report, _ = get_concordance(diagram_argument(args, parser), alpha=args.alpha)
        case _:
            raise NotImplementedError(f"Unknown command {args.command}")
    text = render(report, output_format)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="UTF-8") as fp:
            fp.write(text)
        logger.info(f"Saved {report} to {args.out}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging_level(), format="%(asctime)s - %(funcName)s +%(lineno)s - %(levelname)s - %(message)s"
    )
    try:
        run(args, parser)
    except (InvalidDiagramException, InvalidMovieException, NotAKnotException, NotImplementedError, ValueError) as exc:
        sys.stderr.write(f"khlab: error: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
