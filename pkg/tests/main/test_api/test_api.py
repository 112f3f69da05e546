import json
import logging
import os

import jsonschema
import pytest
import yaml

from khlab.api import (
    get_burnside,
    get_cobordism,
    get_concordance,
    get_homology,
    get_jones,
    get_verification,
    logging_level,
)
from khlab.stages.save_stages import render
from khlab.stages.VerifyStage import SUITES, selected_suites
from khlab.utils import pickle_load

SCHEMA_DIR = "khlab/inputs/schema"
MOVIE_DIR = "khlab/inputs/examples/movies"


def validate(report, schema_name: str):
    with open(os.path.join(SCHEMA_DIR, f"{schema_name}.schema.json"), encoding="UTF-8") as fp:
        schema = json.load(fp)
    jsonschema.validate(json.loads(render(report, "json")), schema)


# (theory, coefficient, reduced) settings for the homology of the right trefoil, reduced at edge 1
homology_settings = (
    ("even", "Z", False),
    ("odd", "Z", False),
    ("mod2", "F2", False),
    ("odd", "Z", True),
    ("even", "Q", True),
)

# total rank for each setting defined above
total_ranks = {
    ("even", "Z", False): 4,
    ("odd", "Z", False): 6,
    ("mod2", "F2", False): 6,
    ("odd", "Z", True): 3,
    ("even", "Q", True): 3,
}


@pytest.mark.parametrize("setting", homology_settings)
def test_get_homology(setting):
    theory, coefficient, reduced = setting
    report, answers = get_homology(
        "trefoil", theory=theory, coefficient=coefficient, reduced=reduced, basepoint=1 if reduced else None
    )
    assert len(answers) == 1
    assert sum(g.rank for g in report.groups.values()) == total_ranks[setting]
    assert report.reduced == reduced
    validate(report, "homology")


def test_reduced_needs_basepoint():
    with pytest.raises(ValueError):
        get_homology("trefoil", reduced=True)


def test_homology_of_unknot():
    report, _ = get_homology("U")
    assert {ij: g.rank for ij, g in report.groups.items()} == {(0, -1): 1, (0, 1): 1}
    assert all(not g.torsion for g in report.groups.values())


def test_homology_renderings():
    report, _ = get_homology("trefoil")
    tsv = render(report, "tsv").splitlines()
    assert tsv[0] == "i\tj\trank\ttorsion"
    assert "3\t7\t0\t2" in tsv
    assert len(tsv) == 6
    pretty = render(report, "pretty")
    assert pretty.splitlines()[0].strip().startswith("j\\i")
    simple = json.loads(render(report, "simple"))
    assert simple == {"0,1": "Z", "0,3": "Z", "2,5": "Z", "3,7": "Z/2", "3,9": "Z"}


def test_jones_has_no_table():
    report, _ = get_jones("trefoil")
    with pytest.raises(ValueError):
        render(report, "tsv")
    with pytest.raises(NotImplementedError):
        render(report, "xml")


def test_homology_dump(tmp_path):
    pattern = str(tmp_path / "out" / "?.tsv")
    get_homology("figure_eight", theory="odd", dump_filename_pattern=pattern, output_format="tsv")
    with open(tmp_path / "out" / "HomologyReport_simple.tsv", encoding="UTF-8") as fp:
        lines = fp.read().splitlines()
    assert lines[0] == "i\tj\trank\ttorsion"


@pytest.mark.parametrize("name", ("unknot", "hopf", "trefoil", "figure_eight"))
def test_get_jones(name):
    report, _ = get_jones(name)
    assert report.match
    validate(report, "jones")


def test_get_verification_single_diagram():
    report, answers = get_verification("trefoil", suite="jones,mod2,d2")
    assert report.passed
    assert set(report.suites) == {"jones", "mod2", "d2"}
    assert all(s.checked > 0 for s in report.suites.values())
    assert len(answers[0][1]) == 1
    validate(report, "verify")


def test_get_verification_corpus(tmp_path):
    pickle_filename = str(tmp_path / "reports.pickle")
    report, answers = get_verification(suite="jones", corpus_size=2, seed=3, pickle_filename=pickle_filename)
    assert report.passed
    reports = pickle_load(pickle_filename)
    assert len(reports) == len(answers[0][1])
    assert len(reports) >= 2


def test_verification_is_deterministic():
    first, _ = get_verification(suite="jones", corpus_size=3, seed=7)
    second, _ = get_verification(suite="jones", corpus_size=3, seed=7)
    assert render(first) == render(second)


def test_selected_suites():
    assert selected_suites("all") == list(SUITES)
    assert selected_suites("burnside, jones") == ["burnside", "jones"]
    with pytest.raises(NotImplementedError):
        selected_suites("jones,nonsense")


def test_get_burnside(tmp_path):
    pattern = str(tmp_path / "?.json")
    report, _ = get_burnside("trefoil", dump_filename_pattern=pattern)
    assert report.passed
    assert report.hexagons > 0
    validate(report, "burnside")
    with open(tmp_path / "BurnsideReport_0_complete.json", encoding="UTF-8") as fp:
        saved = json.load(fp)
    with open(tmp_path / "BurnsideReport_0_complete.yml", encoding="UTF-8") as fp:
        assert yaml.safe_load(fp) == saved
    assert saved["hexagons"] == report.hexagons


@pytest.mark.parametrize("movie", ("kink_round_trip", "birth_death"))
def test_get_cobordism(movie):
    report, _ = get_cobordism(os.path.join(MOVIE_DIR, f"{movie}.txt"))
    assert report.witness.is_chain_map
    validate(report, "cobordism")


def test_get_cobordism_with_start():
    with open(os.path.join(MOVIE_DIR, "birth_death.txt"), encoding="UTF-8") as fp:
        moves = [line for line in fp if line.strip() and not line.startswith("#") and line.split()[0] != "U"]
    report, _ = get_cobordism("".join(moves), diagram="trefoil", theory="even")
    assert report.witness.is_chain_map
    assert tuple(report.degree) == (0, 2)


def test_get_concordance():
    report, _ = get_concordance("trefoil")
    assert report.s == 2
    validate(report, "concordance")


@pytest.mark.parametrize(
    "value, expected",
    (("debug", logging.DEBUG), ("INFO", logging.INFO), ("15", 15), ("", logging.WARNING)),
)
def test_logging_level(monkeypatch, value, expected):
    monkeypatch.setenv("KHLAB_LOG", value)
    assert logging_level() == expected


def test_bad_logging_level(monkeypatch):
    monkeypatch.setenv("KHLAB_LOG", "chatty")
    with pytest.raises(ValueError):
        logging_level()


def test_unified_homology_reports_xi():
    report, _ = get_homology("trefoil", theory="unified")
    assert report.xi_action is not None
    assert set(report.xi_action) <= set(report.groups)
    validate(report, "homology")
