import logging
from dataclasses import dataclass, field
from typing import Iterable

from networkx.utils import UnionFind

from khlab.diagram.OrientedDiagram import InvalidDiagramException, OrientedDiagram

logger = logging.getLogger(__name__)

R1_PATTERNS = {
    # (sign, side of the loop relative to the strand) -> positions of (e, N, loop, loop)
    ("p", "l"): ("e", "N", "l", "l"),
    ("p", "r"): ("l", "l", "N", "e"),
    ("n", "l"): ("l", "e", "N", "l"),
    ("n", "r"): ("e", "l", "l", "N"),
}


@dataclass
class Rewrite:
    """! One elementary step of a movie: the diagrams before and after plus the bookkeeping the chain maps need.

    For Reidemeister moves one of the two diagrams is the larger one; its extra crossings are
    `new_crossings` and `label_map` sends its edge labels to those of the smaller diagram (None for
    labels living only inside the move region).
    """

    kind: str
    before: OrientedDiagram
    after: OrientedDiagram
    new_crossings: tuple[int, ...] = ()
    label_map: dict[int, int | None] = field(default_factory=dict)
    loop_labels: tuple[int, ...] = ()
    cobordism_diagram: OrientedDiagram | None = None
    target_label_map: dict[int, int | None] = field(default_factory=dict)

    @property
    def is_insertion(self) -> bool:
        return self.kind in ("R1+", "R2+", "birth")

    @property
    def larger(self) -> OrientedDiagram:
        return self.after if self.is_insertion else self.before

    @property
    def smaller(self) -> OrientedDiagram:
        return self.before if self.is_insertion else self.after

    @property
    def kept(self) -> tuple[int, ...]:
        """! Crossing indices of the larger diagram that survive, in the order of the smaller one"""
        return tuple(c for c in range(self.larger.n) if c not in self.new_crossings)

    def __str__(self):
        return f"{self.kind}: {self.before} -> {self.after}"


def _check_edge(d: OrientedDiagram, e: int):
    if e not in d.edges:
        raise InvalidDiagramException(f"Edge {e} is not an edge of {d}")


def _relabel_head(d: OrientedDiagram, ends: list[list[int]], e: int, new_label: int):
    c, p = d.head(e)
    ends[c][p] = new_label


def splice(
    d: OrientedDiagram, removed: Iterable[int], inner: Iterable[int] = ()
) -> tuple[OrientedDiagram, dict[int, int | None]]:
    """! Delete crossings and join the strands running through them.

    Labels chained together through the deleted crossings collapse onto their smallest label
    outside `inner`; a chain that never leaves the deleted crossings becomes a free loop.
    @return the new diagram and the label map (labels in `inner` map to None)
    """
    removed_set = set(removed)
    inner_set = set(inner)
    uf = UnionFind()
    for c in removed_set:
        a, b, x, y = d.ends(c)
        uf.union(a, x)
        uf.union(b, y)

    mapping: dict[int, int] = {}
    new_loops = []
    for group in uf.to_sets():
        candidates = [e for e in group if e not in inner_set] or list(group)
        keep = min(candidates)
        for e in group:
            mapping[e] = keep
        if not any(c not in removed_set for e in group for (c, _) in d.occurrences[e]):
            new_loops.append(keep)

    crossings = [tuple(mapping.get(e, e) for e in d.ends(c)) for c in range(d.n) if c not in removed_set]
    basepoint = None if d.basepoint is None else mapping.get(d.basepoint, d.basepoint)
    result = OrientedDiagram(
        crossings,
        free_loops=d.free_loops + tuple(sorted(new_loops)),
        arrows=tuple(a for c, a in enumerate(d.arrows) if c not in removed_set),
        basepoint=basepoint,
        oriented=d.oriented,
    )
    label_map: dict[int, int | None] = {e: mapping.get(e, e) for e in d.edges}
    for e in inner_set:
        label_map[e] = None
    return result, label_map


## Reidemeister I
def r1_insert(d: OrientedDiagram, e: int, sign: str = "p", side: str = "l") -> Rewrite:
    """! Add a kink on edge e as a new last crossing.
    @param sign: 'p' for a positive kink, 'n' for a negative one
    @param side: 'l' or 'r', side of the strand the small loop lies on
    """
    _check_edge(d, e)
    if (sign, side) not in R1_PATTERNS:
        raise InvalidDiagramException(f"Unknown kink type ({sign}, {side}); use p|n and l|r")
    ends = [list(x.ends) for x in d.crossings]
    loop = d.max_label() + 2
    if e in d.free_loops:
        new = d.max_label() + 1
        names = {"e": e, "N": e, "l": new}
        free_loops = tuple(f for f in d.free_loops if f != e)
        label_map: dict[int, int | None] = {f: f for f in d.edges}
        label_map[new] = None
        loop = new
    else:
        new = d.max_label() + 1
        _relabel_head(d, ends, e, new)
        names = {"e": e, "N": new, "l": loop}
        free_loops = d.free_loops
        label_map = {f: f for f in d.edges}
        label_map.update({new: e, loop: None})
    ends.append([names[k] for k in R1_PATTERNS[(sign, side)]])
    after = OrientedDiagram(
        ends, free_loops=free_loops, arrows=d.arrows + (True,), basepoint=d.basepoint, oriented=d.oriented
    )
    logger.debug("R1 insertion on edge %d gives %s", e, after)
    return Rewrite("R1+", d, after, (after.n - 1,), label_map, (loop,))


def kink_loop(d: OrientedDiagram, c: int) -> tuple[int, int]:
    """! The small loop of a kink crossing and the resolution (0 or 1) in which it closes up"""
    ends = d.ends(c)
    found = []
    for p in range(4):
        q = (p + 1) % 4
        if ends[p] == ends[q]:
            state = 0 if {p, q} in ({0, 1}, {2, 3}) else 1
            found.append((ends[p], state))
    if not found:
        raise InvalidDiagramException(f"Crossing {c + 1} of {d} is not a kink")
    return max(found)


def r1_remove(d: OrientedDiagram, c: int) -> Rewrite:
    """! Undo the kink at crossing index c (0-based)"""
    if not 0 <= c < d.n:
        raise InvalidDiagramException(f"Crossing {c + 1} does not exist in a {d.n}-crossing diagram")
    loop, _ = kink_loop(d, c)
    after, label_map = splice(d, [c], inner=[loop])
    return Rewrite("R1-", d, after, (c,), label_map, (loop,))


## Reidemeister II
def shared_face(d: OrientedDiagram, a: int, b: int) -> tuple[str, str]:
    """! Sides of a and b, relative to their orientations, of the first face they both border"""
    for face in d.faces():
        darts_a = [dart for dart in face if d.label_at(dart) == a]
        darts_b = [dart for dart in face if d.label_at(dart) == b]
        if darts_a and darts_b:
            return d.face_side(darts_a[0]), d.face_side(darts_b[0])
    raise InvalidDiagramException(f"Edges {a} and {b} do not border a common face of {d}")


def r2_insert(d: OrientedDiagram, a: int, b: int) -> Rewrite:
    """! Push edge a over edge b across a face they share; the two new crossings are appended"""
    for e in (a, b):
        _check_edge(d, e)
        if e in d.free_loops:
            raise InvalidDiagramException(f"Edge {e} is a free loop; R2 needs crossing edges")
    if a == b:
        raise InvalidDiagramException("R2 needs two different edges")
    side_a, side_b = shared_face(d, a, b)
    m = d.max_label()
    a1, a2, a3, b1, b2, b3 = a, m + 1, m + 2, b, m + 3, m + 4
    ends = [list(x.ends) for x in d.crossings]
    _relabel_head(d, ends, a, a3)
    _relabel_head(d, ends, b, b3)
    match (side_a, side_b):
        case ("R", "L"):
            new = [(b1, a2, b2, a1), (b2, a2, b3, a3)]
        case ("L", "L"):
            new = [(b2, a2, b3, a1), (b1, a2, b2, a3)]
        case ("L", "R"):
            new = [(b1, a1, b2, a2), (b2, a3, b3, a2)]
        case ("R", "R"):
            new = [(b2, a1, b3, a2), (b1, a3, b2, a2)]
        case _:
            raise NotImplementedError(f"Unknown face sides {side_a}, {side_b}")
    ends.extend([list(x) for x in new])
    after = OrientedDiagram(
        ends, free_loops=d.free_loops, arrows=d.arrows + (True, True), basepoint=d.basepoint, oriented=d.oriented
    )
    label_map: dict[int, int | None] = {f: f for f in d.edges}
    label_map.update({a2: None, b2: None, a3: a, b3: b})
    logger.debug("R2 insertion of %d over %d (%s%s) gives %s", a, b, side_a, side_b, after)
    return Rewrite("R2+", d, after, (after.n - 2, after.n - 1), label_map, (a2, b2))


def bigon_edges(d: OrientedDiagram, c1: int, c2: int) -> tuple[int, int]:
    """! The over and under edges of the bigon between crossings c1 and c2, checked for an R2 pattern"""
    if c1 == c2 or not (0 <= c1 < d.n and 0 <= c2 < d.n):
        raise InvalidDiagramException(f"Crossings {c1 + 1} and {c2 + 1} cannot form an R2 pair")
    x1, x2 = d.crossings[c1], d.crossings[c2]
    if x1.sign == x2.sign:
        raise InvalidDiagramException(f"Crossings {c1 + 1} and {c2 + 1} have the same sign")
    over = {x1.ends[p] for p in (1, 3)} & {x2.ends[p] for p in (1, 3)}
    under = {x1.ends[p] for p in (0, 2)} & {x2.ends[p] for p in (0, 2)}
    for o in sorted(over):
        for u in sorted(under):
            for face in d.faces():
                if len(face) == 2 and {d.label_at(dart) for dart in face} == {o, u}:
                    return o, u
    raise InvalidDiagramException(f"Crossings {c1 + 1} and {c2 + 1} do not bound an R2 bigon")


def r2_remove(d: OrientedDiagram, c1: int, c2: int) -> Rewrite:
    over, under = bigon_edges(d, c1, c2)
    after, label_map = splice(d, [c1, c2], inner=[over, under])
    return Rewrite("R2-", d, after, tuple(sorted((c1, c2))), label_map, (over, under))


## Reidemeister III
def triangle_face(d: OrientedDiagram, crossings: Iterable[int]) -> list[tuple[int, int]]:
    target = set(crossings)
    if len(target) != 3:
        raise InvalidDiagramException("R3 needs three distinct crossings")
    for face in d.faces():
        if len(face) == 3 and {c for c, _ in face} == target:
            return face
    raise InvalidDiagramException(f"Crossings {sorted(c + 1 for c in target)} do not bound a triangle")


def r3(d: OrientedDiagram, c1: int, c2: int, c3: int) -> Rewrite:
    """! Slide one strand across the crossing of the other two.

    Every strand crosses the other two in reversed order afterwards; crossing signs and
    over/under data are preserved and the crossing between a pair of strands keeps its index.
    """
    for c in (c1, c2, c3):
        if not 0 <= c < d.n:
            raise InvalidDiagramException(f"Crossing {c + 1} does not exist in a {d.n}-crossing diagram")
    face = triangle_face(d, (c1, c2, c3))
    inner = [d.label_at(dart) for dart in face]
    if len(set(inner)) != 3:
        raise InvalidDiagramException("Triangle edges are not distinct")

    # strand data keyed by the inner edge label: entering label, leaving label, over flags
    strand_in: dict[int, int] = {}
    strand_out: dict[int, int] = {}
    overs: dict[int, list[bool]] = {m: [] for m in inner}
    for m in inner:
        for c, p in d.occurrences[m]:
            beyond = d.ends(c)[(p + 2) % 4]
            if d.orientation[(c, p)]:
                strand_out[m] = beyond
            else:
                strand_in[m] = beyond
            overs[m].append(p % 2 == 1)
    kinds = sorted(sum(flags) for flags in overs.values())
    if kinds != [0, 1, 2]:
        raise InvalidDiagramException("The triangle is alternating or has no middle strand; R3 does not apply")

    ends = [list(x.ends) for x in d.crossings]
    for c in (c1, c2, c3):
        x = d.crossings[c]
        data = {}
        for p in (0, 1):
            m = next(lab for lab in (x.ends[p], x.ends[p + 2]) if lab in inner)
            here = next(o for o in d.occurrences[m] if o[0] == c)
            if not d.orientation[here]:
                # m leaves c, so c was the first crossing on this strand
                data[p] = (m, strand_out[m])
            else:
                data[p] = (strand_in[m], m)
        u_in, u_out = data[0]
        o_in, o_out = data[1]
        if x.sign == 1:
            ends[c] = [u_in, o_out, u_out, o_in]
        else:
            ends[c] = [u_in, o_in, u_out, o_out]
    after = OrientedDiagram(
        ends, free_loops=d.free_loops, arrows=d.arrows, basepoint=d.basepoint, oriented=d.oriented
    )
    logger.debug("R3 on crossings %s gives %s", (c1 + 1, c2 + 1, c3 + 1), after)
    return Rewrite("R3", d, after, (), {f: f for f in d.edges}, tuple(sorted(inner)))


## Births, deaths and saddles
def birth(d: OrientedDiagram) -> Rewrite:
    loop = d.max_label() + 1
    after = OrientedDiagram(
        [x.ends for x in d.crossings],
        free_loops=d.free_loops + (loop,),
        arrows=d.arrows,
        basepoint=d.basepoint,
        oriented=d.oriented,
    )
    label_map: dict[int, int | None] = {f: f for f in d.edges}
    label_map[loop] = None
    return Rewrite("birth", d, after, label_map=label_map, loop_labels=(loop,))


def death(d: OrientedDiagram, loop: int | None = None) -> Rewrite:
    if not d.free_loops:
        raise InvalidDiagramException(f"{d} has no free loop to cap off")
    loop = d.free_loops[-1] if loop is None else loop
    if loop not in d.free_loops:
        raise InvalidDiagramException(f"Edge {loop} is not a free loop of {d}")
    if loop == d.basepoint:
        raise InvalidDiagramException("Cannot cap off the component carrying the basepoint")
    after = OrientedDiagram(
        [x.ends for x in d.crossings],
        free_loops=tuple(f for f in d.free_loops if f != loop),
        arrows=d.arrows,
        basepoint=d.basepoint,
        oriented=d.oriented,
    )
    label_map: dict[int, int | None] = {f: f for f in d.edges}
    label_map[loop] = None
    return Rewrite("death", d, after, label_map=label_map, loop_labels=(loop,))


def saddle(d: OrientedDiagram, e1: int, e2: int) -> Rewrite:
    """! Band surgery between edges e1 and e2.

    The cobordism diagram L carries one extra last crossing whose 0-resolution is `before` and
    whose 1-resolution is `after`. L has no consistent orientation and is only used through its
    resolutions. `label_map` and `target_label_map` send the labels of L to those of `before`
    and `after`.
    """
    for e in (e1, e2):
        _check_edge(d, e)
    m = d.max_label()
    ends = [list(x.ends) for x in d.crossings]
    loops = list(d.free_loops)
    identity: dict[int, int | None] = {f: f for f in d.edges}
    to_before = dict(identity)
    to_after = dict(identity)
    basepoint = d.basepoint

    if e1 == e2 and e1 in d.free_loops:
        new = m + 1
        big_ends = ends + [[e1, new, new, e1]]
        big_loops = [f for f in loops if f != e1]
        after_ends, after_loops = ends, d.free_loops + (new,)
        to_before[new] = e1
        to_after[new] = new
    elif e1 == e2:
        raise InvalidDiagramException(f"A saddle from edge {e1} to itself needs a free loop")
    elif e1 in d.free_loops and e2 in d.free_loops:
        big_ends = ends + [[e1, e1, e2, e2]]
        big_loops = [f for f in loops if f not in (e1, e2)]
        keep, drop = (e1, e2) if e2 != d.basepoint else (e2, e1)
        after_ends, after_loops = ends, tuple(f for f in loops if f != drop)
        to_after[drop] = keep
    elif e1 in d.free_loops or e2 in d.free_loops:
        edge, loop = (e2, e1) if e1 in d.free_loops else (e1, e2)
        new = m + 1
        big_ends = [list(x) for x in ends]
        c, p = d.head(edge)
        big_ends[c][p] = new
        big_ends.append([edge, new, loop, loop])
        big_loops = [f for f in loops if f != loop]
        after_ends, after_loops = ends, tuple(f for f in loops if f != loop)
        to_before[new] = edge
        to_after.update({new: edge, loop: edge})
        if d.basepoint == loop:
            basepoint = edge
    else:
        side1, side2 = shared_face(d, e1, e2)
        if side1 != side2:
            raise InvalidDiagramException(f"Edges {e1} and {e2} are parallel; a saddle needs antiparallel edges")
        n1, n2 = m + 1, m + 2
        big_ends = [list(x) for x in ends]
        h1, h2 = d.head(e1), d.head(e2)
        big_ends[h1[0]][h1[1]] = n1
        big_ends[h2[0]][h2[1]] = n2
        big_ends.append([n2, e2, n1, e1] if side1 == "R" else [e1, n1, e2, n2])
        big_loops = loops
        after_ends = [list(x) for x in ends]
        after_ends[h1[0]][h1[1]] = e2
        after_ends[h2[0]][h2[1]] = e1
        after_loops = d.free_loops
        to_before.update({n1: e1, n2: e2})
        to_after.update({n1: e2, n2: e1})

    after = OrientedDiagram(after_ends, free_loops=after_loops, arrows=d.arrows, basepoint=basepoint)
    cobordism = OrientedDiagram(
        big_ends, free_loops=big_loops, arrows=d.arrows + (True,), basepoint=d.basepoint, oriented=False
    )
    logger.debug("Saddle between %d and %d through %s", e1, e2, cobordism)
    return Rewrite(
        "saddle",
        d,
        after,
        (cobordism.n - 1,),
        to_before,
        cobordism_diagram=cobordism,
        target_label_map=to_after,
    )


def reverse(step: Rewrite) -> Rewrite:
    """! The same step run backwards in time"""
    inverse_kind = {"R1+": "R1-", "R1-": "R1+", "R2+": "R2-", "R2-": "R2+", "birth": "death", "death": "birth"}
    if step.kind == "saddle":
        assert step.cobordism_diagram is not None
        big = step.cobordism_diagram
        ends = [x.ends for x in big.crossings]
        a, b, c, e = ends[-1]
        # rotating the last crossing by one position exchanges its two resolutions
        ends[-1] = (b, c, e, a)
        rotated = OrientedDiagram(
            ends, free_loops=big.free_loops, arrows=big.arrows, basepoint=step.after.basepoint, oriented=False
        )
        return Rewrite(
            "saddle",
            step.after,
            step.before,
            step.new_crossings,
            step.target_label_map,
            step.loop_labels,
            rotated,
            step.label_map,
        )
    kind = inverse_kind.get(step.kind, step.kind)
    return Rewrite(kind, step.after, step.before, step.new_crossings, step.label_map, step.loop_labels)
