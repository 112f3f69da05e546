import json

import pytest

from khlab.__main__ import build_parser, main

TREFOIL = "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]"


def test_homology_of_unknot(capsys):
    assert main(["homology", "--pd", "U", "--theory", "even", "--jobs", "1"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert [(g["i"], g["j"], g["rank"]) for g in result["bigradings"]] == [(0, -1, 1), (0, 1, 1)]
    assert result["theory"] == "even"


def test_odd_homology_of_trefoil(capsys):
    assert main(["homology", "--pd", TREFOIL, "--theory", "odd", "--coeff", "Z", "--jobs", "1"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert sum(g["rank"] for g in result["bigradings"]) == 6


def test_reduced_homology_command(capsys):
    assert main(["reduced-homology", "--pd", "trefoil", "--bp", "1", "--format", "tsv", "--jobs", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1:] == ["0\t2\t1\t", "2\t6\t1\t", "3\t8\t1\t"]


def test_homology_from_file(tmp_path, capsys):
    path = tmp_path / "trefoil.pd"
    path.write_text(f"# right-handed\n{TREFOIL}\n")
    assert main(["homology", "--in", str(path), "--pretty", "--jobs", "1"]) == 0
    assert "Z/2" in capsys.readouterr().out


def test_output_file(tmp_path, capsys):
    out = tmp_path / "jones.json"
    assert main(["jones", "--pd", "figure_eight", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["match"] is True


@pytest.mark.parametrize(
    "argv",
    (
        ["homology"],
        ["homology", "--pd", "U", "--in", "diagram.pd"],
        ["cobordism", "--pd", "U"],
        ["homology", "--pd", "U", "--theory", "sideways"],
        ["knot-floer", "--pd", "U"],
    ),
)
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


@pytest.mark.parametrize(
    "argv",
    (
        ["homology", "--pd", "PD[X(1,2,3)]"],
        ["homology", "--pd", "no_such_knot"],
        ["s", "--pd", "hopf"],
        ["verify", "--pd", "U", "--suite", "nonsense"],
        ["reduced-homology", "--pd", "trefoil", "--jobs", "1"],
    ),
)
def test_validation_errors(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("khlab: error:")


def test_invalid_movie_line(tmp_path, capsys):
    movie = tmp_path / "bad.txt"
    movie.write_text("U\nbirth\ndeath e42\n")
    assert main(["cobordism", "--movie", str(movie)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_cobordism(capsys):
    assert main(["cobordism", "--movie", "khlab/inputs/examples/movies/split_merge.txt"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["chain_map"] is True
    assert result["degree"] == [0, -2]
    assert result["dual_degree"] == [0, 2]


def test_s(capsys):
    assert main(["s", "--pd", "trefoil"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["s"] == 2
    assert result["alpha"] == "bockstein_even"


def test_verify_burnside(capsys):
    assert main(["verify", "--suite", "burnside", "--pd", "trefoil"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["passed"] is True
    assert result["suites"]["burnside"]["checked"] > 0


def test_parser_defaults():
    args = build_parser().parse_args(["s", "--pd", "U"])
    assert args.format == "json"
    assert args.theory is None
    assert args.alpha == "bockstein_even"
    assert args.corpus_size == 20
