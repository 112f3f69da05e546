import logging
from typing import Any, Sequence

import networkx as nx

from khlab.diagram.Crossing import Crossing
from khlab.datatypes import Constants

logger = logging.getLogger(__name__)

Occurrence = tuple[int, int]


class InvalidDiagramException(Exception):
    pass


class OrientedDiagram:
    """! A PD-coded link diagram with ordered crossings, crossing orientations (arrows),
    free loops and an optional basepoint.

    Strand directions are recovered from the PD convention (position 0 is the incoming
    under-strand) and each crossing gets its sign from them. Instances are immutable: every
    transformation returns a new diagram.
    """

    def __init__(
        self,
        crossings: Sequence[Sequence[int]],
        *,
        free_loops: Sequence[int] = (),
        arrows: Sequence[bool] | None = None,
        basepoint: int | None = None,
        oriented: bool = True,
    ):
        """
        @param crossings: 4-tuples of edge labels, listed counterclockwise from the incoming under-strand
        @param free_loops: labels of crossingless unknotted components
        @param arrows: per crossing, direction of the arrow joining the two 0-resolution arcs
        @param basepoint: edge label carrying the basepoint
        @param oriented: False for diagrams used only through their resolutions (saddle cubes); signs are then unset
        """
        ends_list = [tuple(int(e) for e in ends) for ends in crossings]
        self.free_loops: tuple[int, ...] = tuple(int(e) for e in free_loops)
        self.oriented = oriented
        self.arrows: tuple[bool, ...] = (
            tuple(bool(a) for a in arrows) if arrows is not None else tuple(True for _ in ends_list)
        )
        self.basepoint = None if basepoint is None else int(basepoint)

        self.occurrences: dict[int, list[Occurrence]] = {}
        for c, ends in enumerate(ends_list):
            if len(ends) != 4:
                raise InvalidDiagramException(f"Crossing {c + 1} has {len(ends)} labels instead of 4")
            for p, e in enumerate(ends):
                self.occurrences.setdefault(e, []).append((c, p))
        self._validate(ends_list)

        self.orientation: dict[Occurrence, bool] = {}
        if oriented:
            self.orientation = self._solve_orientation(ends_list)
            self.crossings = tuple(
                Crossing(ends, 1 if not self.orientation[(c, 1)] else -1) for c, ends in enumerate(ends_list)
            )
        else:
            self.crossings = tuple(Crossing(ends) for ends in ends_list)

    ## Validation and orientation
    def _validate(self, ends_list: list[tuple[int, ...]]):
        for e, occ in self.occurrences.items():
            if e <= 0:
                raise InvalidDiagramException(f"Edge label {e} is not a positive integer")
            if len(occ) != 2:
                raise InvalidDiagramException(f"Edge {e} occurs {len(occ)} times, expected exactly twice")
        if len(set(self.free_loops)) != len(self.free_loops):
            raise InvalidDiagramException(f"Free loop labels {self.free_loops} are not distinct")
        for e in self.free_loops:
            if e <= 0:
                raise InvalidDiagramException(f"Free loop label {e} is not a positive integer")
            if e in self.occurrences:
                raise InvalidDiagramException(f"Free loop label {e} is also a crossing edge")
        if len(self.arrows) != len(ends_list):
            raise InvalidDiagramException(
                f"Got {len(self.arrows)} crossing orientations for {len(ends_list)} crossings"
            )
        if self.basepoint is not None and self.basepoint not in self.edges:
            raise InvalidDiagramException(f"Basepoint {self.basepoint} is not an edge label")

    def _solve_orientation(self, ends_list: list[tuple[int, ...]]) -> dict[Occurrence, bool]:
        """! Two-colour the occurrences into incoming (True) and outgoing (False).

        The two occurrences of an edge differ, positions p and p+2 of a crossing differ, and
        position 0 is incoming. Components never entering a crossing from below are fixed
        by their smallest label: that edge runs towards the end whose strand continues into
        the larger label.
        """
        graph = nx.Graph()
        for e, occ in self.occurrences.items():
            graph.add_edge(occ[0], occ[1])
        for c in range(len(ends_list)):
            graph.add_edge((c, 0), (c, 2))
            graph.add_edge((c, 1), (c, 3))

        incoming: dict[Occurrence, bool] = {}
        for component in sorted(nx.connected_components(graph), key=min):
            sub = graph.subgraph(component)
            try:
                colour = nx.algorithms.bipartite.color(sub)
            except nx.NetworkXError:
                raise InvalidDiagramException("Inconsistent orientation: no coherent strand directions exist")
            pinned = {colour[o] for o in component if o[1] == 0}
            if len(pinned) > 1:
                raise InvalidDiagramException(
                    f"Inconsistent orientation: two incoming under-strands meet along the strand through {min(component)}"
                )
            if pinned:
                in_colour = pinned.pop()
            else:
                labels = sorted({ends_list[c][p] for (c, p) in component})
                first = labels[0]
                o1, o2 = sorted(self.occurrences[first])
                partner1 = ends_list[o1[0]][(o1[1] + 2) % 4]
                partner2 = ends_list[o2[0]][(o2[1] + 2) % 4]
                chosen = o2 if partner2 > partner1 else o1
                in_colour = colour[chosen]
            for o in component:
                incoming[o] = colour[o] == in_colour
        return incoming

    ## Basic data
    @property
    def edges(self) -> set[int]:
        return set(self.occurrences) | set(self.free_loops)

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.crossings if x.sign == 1)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.crossings if x.sign == -1)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    def ends(self, c: int) -> tuple[int, int, int, int]:
        return self.crossings[c].ends

    def label_at(self, occurrence: Occurrence) -> int:
        return self.crossings[occurrence[0]].ends[occurrence[1]]

    def other_occurrence(self, occurrence: Occurrence) -> Occurrence:
        first, second = self.occurrences[self.label_at(occurrence)]
        return second if first == occurrence else first

    def head(self, e: int) -> Occurrence:
        """! Occurrence where edge e enters a crossing"""
        return next(o for o in self.occurrences[e] if self.orientation[o])

    def tail(self, e: int) -> Occurrence:
        """! Occurrence where edge e leaves a crossing"""
        return next(o for o in self.occurrences[e] if not self.orientation[o])

    def max_label(self) -> int:
        return max(self.edges, default=0)

    def components(self) -> list[set[int]]:
        """! Edge labels of each link component"""
        graph = nx.Graph()
        graph.add_nodes_from(self.edges)
        for x in self.crossings:
            graph.add_edge(x.ends[0], x.ends[2])
            graph.add_edge(x.ends[1], x.ends[3])
        return sorted((set(c) for c in nx.connected_components(graph)), key=min)

    def number_of_components(self) -> int:
        return len(self.components())

    def is_knot(self) -> bool:
        return self.number_of_components() == 1

    def faces(self) -> list[list[Occurrence]]:
        """! Faces of the planar map of each crossing-carrying piece.

        A dart (c, p) travels along the edge at position p away from crossing c; the next dart
        turns to position p'+1 at the arriving occurrence (c', p'), which keeps the face on
        the right of the travel direction.
        """
        seen: set[Occurrence] = set()
        faces = []
        for c in range(self.n):
            for p in range(4):
                if (c, p) in seen:
                    continue
                face = []
                dart = (c, p)
                while dart not in seen:
                    seen.add(dart)
                    face.append(dart)
                    c2, p2 = self.other_occurrence(dart)
                    dart = (c2, (p2 + 1) % 4)
                faces.append(face)
        return faces

    def face_side(self, dart: Occurrence) -> str:
        """! Side ('R' or 'L') of the edge, relative to its orientation, on which the dart's face lies"""
        return "R" if not self.orientation[dart] else "L"

    ## Transformations
    def _rebuild(self, **changes: Any) -> "OrientedDiagram":
        params: dict[str, Any] = {
            "crossings": [x.ends for x in self.crossings],
            "free_loops": self.free_loops,
            "arrows": self.arrows,
            "basepoint": self.basepoint,
            "oriented": self.oriented,
        }
        params.update(changes)
        crossings = params.pop("crossings")
        return OrientedDiagram(crossings, **params)

    def mirror(self) -> "OrientedDiagram":
        """! Exchange over and under at every crossing; positive and negative crossings swap"""
        new_ends = []
        for x in self.crossings:
            a, b, c, d = x.ends
            new_ends.append((d, a, b, c) if x.sign == 1 else (b, c, d, a))
        return self._rebuild(crossings=new_ends)

    def set_crossing_orientations(self, arrows: Sequence[bool]) -> "OrientedDiagram":
        if len(arrows) != self.n:
            raise ValueError(f"Got {len(arrows)} crossing orientations for a {self.n}-crossing diagram")
        return self._rebuild(arrows=tuple(bool(a) for a in arrows))

    def with_basepoint(self, basepoint: int | None) -> "OrientedDiagram":
        return self._rebuild(basepoint=basepoint)

    def reorder_crossings(self, order: Sequence[int]) -> "OrientedDiagram":
        """! New diagram whose k-th crossing is crossing order[k] of this one"""
        if sorted(order) != list(range(self.n)):
            raise ValueError(f"{order} is not a permutation of the {self.n} crossings")
        return self._rebuild(
            crossings=[self.crossings[k].ends for k in order], arrows=tuple(self.arrows[k] for k in order)
        )

    def relabel(self, mapping: dict[int, int]) -> "OrientedDiagram":
        """! Rename edge labels; labels missing from mapping are kept"""

        def f(e: int) -> int:
            return mapping.get(e, e)

        return self._rebuild(
            crossings=[tuple(f(e) for e in x.ends) for x in self.crossings],
            free_loops=tuple(f(e) for e in self.free_loops),
            basepoint=None if self.basepoint is None else f(self.basepoint),
        )

    def canonical_labels(self) -> "OrientedDiagram":
        """! Relabel edges 1, 2, ... in order of first appearance, free loops last"""
        mapping: dict[int, int] = {}
        for x in self.crossings:
            for e in x.ends:
                mapping.setdefault(e, len(mapping) + 1)
        for e in self.free_loops:
            mapping.setdefault(e, len(mapping) + 1)
        return self.relabel(mapping)

    ## Serialization
    def default_loop_labels(self) -> tuple[int, ...]:
        start = max(self.occurrences, default=0)
        return tuple(range(start + 1, start + 1 + len(self.free_loops)))

    def to_pd(self) -> str:
        """! Canonical PD text: crossings in order, space-free fields, then suffix tokens"""
        text = "PD[" + ",".join(str(x) for x in self.crossings) + "]"
        if self.free_loops:
            if self.free_loops == self.default_loop_labels():
                text += f" {Constants.FREE_LOOP_TOKEN}" * len(self.free_loops)
            else:
                text += "".join(f" {Constants.FREE_LOOP_TOKEN}({e})" for e in self.free_loops)
        if self.basepoint is not None:
            text += f" bp={self.basepoint}"
        if not all(self.arrows):
            text += " arrows=" + "".join("T" if a else "F" for a in self.arrows)
        return text

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, OrientedDiagram)
            and [x.ends for x in self.crossings] == [x.ends for x in other.crossings]
            and self.free_loops == other.free_loops
            and self.arrows == other.arrows
            and self.basepoint == other.basepoint
            and self.oriented == other.oriented
        )

    def __hash__(self):
        return hash(self.to_pd())

    def __str__(self):
        return self.to_pd()

    def __repr__(self):
        return f"OrientedDiagram({self.to_pd()!r})"

    def __jsonrepr__(self):
        return self.to_pd()


def unknot() -> OrientedDiagram:
    return OrientedDiagram([], free_loops=(1,))


def disjoint_union(d1: OrientedDiagram, d2: OrientedDiagram) -> OrientedDiagram:
    """! Split union; labels of d2 are shifted above those of d1"""
    shift = d1.max_label()
    d2s = d2.relabel({e: e + shift for e in d2.edges})
    return OrientedDiagram(
        [x.ends for x in d1.crossings] + [x.ends for x in d2s.crossings],
        free_loops=d1.free_loops + d2s.free_loops,
        arrows=d1.arrows + d2s.arrows,
        basepoint=d1.basepoint if d1.basepoint is not None else d2s.basepoint,
    )
