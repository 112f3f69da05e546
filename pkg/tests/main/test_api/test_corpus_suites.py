import pytest

from khlab.api import get_verification
from khlab.io.corpus import default_corpus, named_corpus
from khlab.stages.VerifyStage import run_suite

corpus = default_corpus()

# Suites every diagram of the default corpus goes through
corpus_suites = ("d2", "mod2", "jones", "burnside", "splitting", "ses")


def test_default_corpus_size():
    assert len(corpus) >= 50
    assert len({entry.name for entry in corpus}) == len(corpus)


@pytest.mark.parametrize("suite", corpus_suites)
@pytest.mark.parametrize("entry", corpus, ids=lambda e: e.name)
def test_corpus_suite(entry, suite):
    result = run_suite(suite, entry.diagram, seed=0)
    assert result.passed, result.details


@pytest.mark.parametrize("entry", named_corpus(), ids=lambda e: e.name)
def test_named_corpus_invariance(entry):
    result = run_suite("invariance", entry.diagram, seed=0)
    assert result.passed, result.details


def test_corpus_verification_report():
    report, answers = get_verification(suite="d2,jones", corpus_size=50, seed=0)
    assert report.passed
    assert len(answers[0][1]) >= 50
