import logging
import re

from khlab.datatypes import Constants
from khlab.diagram.OrientedDiagram import InvalidDiagramException, OrientedDiagram

logger = logging.getLogger(__name__)

PD_BLOCK = re.compile(r"^PD\[(?P<body>[^\]]*)\]")
CROSSING = re.compile(r"\s*X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*")
LOOP_TOKEN = re.compile(rf"^{Constants.FREE_LOOP_TOKEN}(\((?P<label>\d+)\))?$")
BASEPOINT_TOKEN = re.compile(r"^bp=(?P<label>\d+)$")
ARROWS_TOKEN = re.compile(r"^arrows=(?P<arrows>[TF]*)$")


def parse_pd(text: str) -> OrientedDiagram:
    """! Parse `PD[X(a,b,c,d),...]` followed by optional `U`, `U(k)`, `bp=k` and `arrows=TF..` tokens.

    A text made only of `U` tokens is a crossingless unlink.
    @raise InvalidDiagramException: malformed text or an invalid diagram
    """
    stripped = text.strip()
    crossings: list[tuple[int, int, int, int]] = []
    match = PD_BLOCK.match(stripped)
    if match:
        crossings = _parse_body(match.group("body"))
        rest = stripped[match.end() :]
    elif stripped.startswith("PD"):
        raise InvalidDiagramException(f"Malformed PD block in {text!r}")
    else:
        rest = stripped

    explicit_loops: list[int] = []
    bare_loops = 0
    basepoint = None
    arrows = None
    for token in rest.split():
        if m := LOOP_TOKEN.match(token):
            if m.group("label") is None:
                bare_loops += 1
            else:
                explicit_loops.append(int(m.group("label")))
        elif m := BASEPOINT_TOKEN.match(token):
            if basepoint is not None:
                raise InvalidDiagramException("Basepoint given twice")
            basepoint = int(m.group("label"))
        elif m := ARROWS_TOKEN.match(token):
            arrows = tuple(ch == "T" for ch in m.group("arrows"))
        else:
            raise InvalidDiagramException(f"Unexpected token {token!r} in {text!r}")

    if not crossings and bare_loops == 0 and not explicit_loops and not match:
        raise InvalidDiagramException(f"No diagram found in {text!r}")

    used = {e for ends in crossings for e in ends} | set(explicit_loops)
    next_label = max((e for ends in crossings for e in ends), default=0)
    loops = list(explicit_loops)
    for _ in range(bare_loops):
        next_label += 1
        while next_label in used:
            next_label += 1
        loops.append(next_label)
        used.add(next_label)

    if arrows is not None and len(arrows) != len(crossings):
        raise InvalidDiagramException(f"Got {len(arrows)} arrows for {len(crossings)} crossings")
    diagram = OrientedDiagram(crossings, free_loops=loops, arrows=arrows, basepoint=basepoint)
    logger.debug("Parsed %s", diagram)
    return diagram


def _parse_body(body: str) -> list[tuple[int, int, int, int]]:
    if not body.strip():
        return []
    crossings = []
    for chunk in _split_crossings(body):
        m = CROSSING.fullmatch(chunk)
        if not m:
            raise InvalidDiagramException(f"Malformed crossing {chunk.strip()!r}")
        crossings.append(tuple(int(g) for g in m.groups()))  # type: ignore
    return crossings


def _split_crossings(body: str) -> list[str]:
    """! Split on the commas between crossings, not the ones inside X(...)"""
    chunks, depth, current = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise InvalidDiagramException(f"Unbalanced parentheses in {body!r}")
        if ch == "," and depth == 0:
            chunks.append(current)
            current = ""
        else:
            current += ch
    if depth != 0:
        raise InvalidDiagramException(f"Unbalanced parentheses in {body!r}")
    chunks.append(current)
    return chunks
