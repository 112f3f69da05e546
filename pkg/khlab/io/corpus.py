"""Deterministic diagram collections used by verification runs.

Random diagrams are closures of random braid words; braid words never leave this module.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from khlab.diagram import rewriting
from khlab.diagram.OrientedDiagram import InvalidDiagramException, OrientedDiagram
from khlab.diagram.rewriting import Rewrite
from khlab.io.DiagramParser import DiagramParser, load_diagram

logger = logging.getLogger(__name__)

BraidWord = list[int]


@dataclass
class CorpusEntry:
    name: str
    diagram: OrientedDiagram

    def __jsonrepr__(self):
        return {"name": self.name, "pd": self.diagram.to_pd()}


@dataclass
class DiagramPair:
    """! Two diagrams of the same link; `step` is the rewrite taking first to second when one is known"""

    name: str
    first: OrientedDiagram
    second: OrientedDiagram
    kind: str
    step: Rewrite | None = field(default=None, repr=False, compare=False)

    def __jsonrepr__(self):
        return {"name": self.name, "kind": self.kind, "first": self.first.to_pd(), "second": self.second.to_pd()}


def braid_closure(word: BraidWord, strands: int) -> OrientedDiagram:
    """! PD code of the closure of a braid word; generator k > 0 is a positive crossing of strands k, k+1"""
    if strands < 1:
        raise ValueError(f"A braid needs at least one strand, got {strands}")
    labels = list(range(1, strands + 1))
    next_label = strands + 1
    crossings = []
    for g in word:
        k = abs(g) - 1
        if not 0 <= k < strands - 1:
            raise ValueError(f"Generator {g} does not fit a {strands}-strand braid")
        left, right = labels[k], labels[k + 1]
        new_left, new_right = next_label, next_label + 1
        next_label += 2
        if g > 0:
            crossings.append([right, new_right, new_left, left])
        else:
            crossings.append([left, right, new_right, new_left])
        labels[k], labels[k + 1] = new_left, new_right

    closing = {final: start for start, final in enumerate(labels, start=1) if final != start}
    crossings = [[closing.get(e, e) for e in ends] for ends in crossings]
    used = {e for ends in crossings for e in ends}
    loops = [k for k in range(1, strands + 1) if k not in used]
    return OrientedDiagram(crossings, free_loops=loops).canonical_labels()


def random_braid(rng: np.random.Generator, max_strands: int = 4, max_length: int = 8) -> tuple[BraidWord, int]:
    strands = int(rng.integers(2, max_strands + 1))
    length = int(rng.integers(1, max_length + 1))
    word = []
    for _ in range(length):
        k = int(rng.integers(1, strands))
        word.append(k if rng.random() < 0.5 else -k)
    return word, strands


def named_corpus() -> list[CorpusEntry]:
    parser = DiagramParser("unknot")
    entries = []
    for name in parser.get_supported_diagrams():
        if name == "trefoil":
            continue
        entries.append(CorpusEntry(name, load_diagram(name)))
    return entries


def random_corpus(count: int, seed: int = 0, max_strands: int = 4, max_length: int = 8) -> list[CorpusEntry]:
    rng = np.random.default_rng(seed)
    entries = []
    for idx in range(count):
        word, strands = random_braid(rng, max_strands, max_length)
        entries.append(CorpusEntry(f"braid{idx}_{strands}:{','.join(map(str, word))}", braid_closure(word, strands)))
    return entries


def default_corpus(count: int = 50, seed: int = 0, max_strands: int = 4, max_length: int = 8) -> list[CorpusEntry]:
    return named_corpus() + random_corpus(count, seed, max_strands, max_length)


def with_random_basepoint(d: OrientedDiagram, rng: np.random.Generator) -> OrientedDiagram:
    edges = sorted(d.edges)
    return d.with_basepoint(edges[int(rng.integers(0, len(edges)))]) if edges else d


## Pairs of diagrams related by Reidemeister moves
def r1_pairs(diagrams: list[CorpusEntry], seed: int = 0) -> list[DiagramPair]:
    rng = np.random.default_rng(seed)
    pairs = []
    for entry in diagrams:
        edges = sorted(entry.diagram.edges)
        if not edges:
            continue
        e = edges[int(rng.integers(0, len(edges)))]
        sign = "p" if rng.random() < 0.5 else "n"
        side = "l" if rng.random() < 0.5 else "r"
        step = rewriting.r1_insert(entry.diagram, e, sign, side)
        pairs.append(DiagramPair(f"{entry.name}+R1({e}{sign}{side})", step.before, step.after, "R1", step))
    return pairs


def r2_pairs(diagrams: list[CorpusEntry], seed: int = 0) -> list[DiagramPair]:
    rng = np.random.default_rng(seed)
    pairs = []
    for entry in diagrams:
        d = entry.diagram
        if d.n == 0:
            continue
        candidates = []
        for face in d.faces():
            labels = sorted({d.label_at(dart) for dart in face})
            candidates += [(a, b) for a in labels for b in labels if a != b]
        if not candidates:
            continue
        a, b = candidates[int(rng.integers(0, len(candidates)))]
        try:
            step = rewriting.r2_insert(d, a, b)
        except InvalidDiagramException as exc:
            logger.debug("Skipping R2 on %s: %s", d, exc)
            continue
        pairs.append(DiagramPair(f"{entry.name}+R2({a},{b})", step.before, step.after, "R2", step))
    return pairs


def braid_pairs(count: int, seed: int = 0, max_length: int = 6) -> list[DiagramPair]:
    """! Closures of braid words differing by a cancelling pair or by the braid relation"""
    rng = np.random.default_rng(seed)
    pairs = []
    for idx in range(count):
        strands = int(rng.integers(3, 5))
        length = int(rng.integers(0, max_length + 1))
        word = [int(rng.integers(1, strands)) * (1 if rng.random() < 0.5 else -1) for _ in range(length)]
        pos = int(rng.integers(0, len(word) + 1))
        k = int(rng.integers(1, strands - 1))
        s = 1 if rng.random() < 0.5 else -1
        if idx % 2 == 0:
            inserted = word[:pos] + [s * k, -s * k] + word[pos:]
            kind = "R2"
        else:
            word = word[:pos] + [s * k, s * (k + 1), s * k] + word[pos:]
            inserted = word[:pos] + [s * (k + 1), s * k, s * (k + 1)] + word[pos + 3 :]
            kind = "R3"
        pairs.append(
            DiagramPair(
                f"braid{idx}_{strands}:{','.join(map(str, word))}|{','.join(map(str, inserted))}",
                braid_closure(word, strands),
                braid_closure(inserted, strands),
                kind,
            )
        )
    return pairs
