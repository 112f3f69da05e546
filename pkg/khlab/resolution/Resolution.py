import logging
from dataclasses import dataclass

from khlab.diagram.OrientedDiagram import Occurrence, OrientedDiagram
from khlab.utils import bits_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DirectedArc:
    """! Surgery arc of one crossing, from (circle, position) to (circle, position)"""

    crossing: int
    tail: tuple[int, int]
    head: tuple[int, int]

    def __str__(self):
        return f"arc c{self.crossing + 1}: {self.tail[0]}[{self.tail[1]}] -> {self.head[0]}[{self.head[1]}]"


class Resolution:
    """! Complete resolution L_v: circles as cyclic sequences of crossing half-edges, and the surgery arcs.

    Circles are numbered by ascending smallest edge label; the circle through the basepoint is last.
    Free loops are circles without half-edges.
    """

    def __init__(self, diagram: OrientedDiagram, vertex: int):
        if not 0 <= vertex < (1 << diagram.n):
            raise ValueError(f"Vertex {vertex} does not belong to the cube of a {diagram.n}-crossing diagram")
        self.diagram = diagram
        self.vertex = vertex
        self.n = diagram.n
        self.circles: list[tuple[Occurrence, ...]] = []
        self.labels: list[frozenset[int]] = []
        self._trace()
        self.circle_of_label: dict[int, int] = {e: k for k, labels in enumerate(self.labels) for e in labels}
        self.arcs: list[DirectedArc] = [self._arc(c) for c in range(self.n)]

    def state(self, c: int) -> int:
        return self.vertex >> c & 1

    @property
    def bits(self) -> tuple[int, ...]:
        return bits_of(self.vertex, self.n)

    def _partner(self, occurrence: Occurrence) -> Occurrence:
        c, p = occurrence
        for a, b in self.diagram.crossings[c].pairs(self.state(c)):
            if p == a:
                return (c, b)
            if p == b:
                return (c, a)
        raise AssertionError(f"Position {p} is not joined at crossing {c}")

    def _trace(self):
        visited: set[Occurrence] = set()
        found = []
        for start in sorted(o for occ in self.diagram.occurrences.values() for o in occ):
            if start in visited:
                continue
            sequence = []
            o = start
            while True:
                other = self.diagram.other_occurrence(o)
                sequence += [o, other]
                visited.update((o, other))
                o = self._partner(other)
                if o == start:
                    break
            found.append((tuple(sequence), frozenset(self.diagram.label_at(x) for x in sequence)))
        found += [((), frozenset([e])) for e in self.diagram.free_loops]
        bp = self.diagram.basepoint
        found.sort(key=lambda item: (bp is not None and bp in item[1], min(item[1])))
        self.circles = [seq for seq, _ in found]
        self.labels = [labels for _, labels in found]

    def circle_of(self, occurrence: Occurrence) -> int:
        return self.circle_of_label[self.diagram.label_at(occurrence)]

    def position_of(self, occurrence: Occurrence) -> tuple[int, int]:
        circle = self.circle_of(occurrence)
        return circle, self.circles[circle].index(occurrence)

    def _arc(self, c: int) -> DirectedArc:
        x = self.diagram.crossings[c]
        arrow = self.diagram.arrows[c]
        state = self.state(c)
        return DirectedArc(
            c,
            self.position_of((c, x.tail_position(state, arrow))),
            self.position_of((c, x.head_position(state, arrow))),
        )

    @property
    def number_of_circles(self) -> int:
        return len(self.circles)

    def basepoint_circle(self) -> int | None:
        bp = self.diagram.basepoint
        return None if bp is None else self.circle_of_label[bp]

    def to_text(self) -> str:
        """! Line oriented listing of circles and arcs, for debugging"""
        lines = [f"vertex {''.join(str(b) for b in self.bits)}"]
        for k, seq in enumerate(self.circles):
            if seq:
                body = " ".join(f"{self.diagram.label_at(o)}@c{o[0] + 1}.{o[1]}" for o in seq)
            else:
                body = f"free loop {min(self.labels[k])}"
            lines.append(f"circle {k}: {body}")
        lines += [str(arc) for arc in self.arcs]
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


def resolve(diagram: OrientedDiagram, vertex: int) -> Resolution:
    return Resolution(diagram, vertex)


def circle_correspondence(
    source: Resolution, target: Resolution, label_map: dict[int, int | None]
) -> dict[int, int | None]:
    """! Match circles of two resolutions through a map of edge labels.

    A circle whose labels all map to None has no partner; any other circle must map onto exactly
    the label set of one target circle.
    @raise ValueError: the label images do not match a target circle
    """
    by_labels = {labels: k for k, labels in enumerate(target.labels)}
    result: dict[int, int | None] = {}
    for k, labels in enumerate(source.labels):
        image = frozenset(label_map.get(e, e) for e in labels) - {None}
        if not image:
            result[k] = None
            continue
        if image not in by_labels:
            raise ValueError(f"Circle {sorted(labels)} maps to {sorted(image)}, which is no circle of the target")  # type: ignore
        result[k] = by_labels[image]  # type: ignore
    return result
