"""Chain maps between the complexes of diagrams related by one Reidemeister move.

R1 and R2 maps come from explicit cancellations in the complex of the larger diagram: what survives is
identified with the complex of the smaller diagram through the circles, up to signs found by walking
the differential. For R3 both sides are reduced the same way: closing the triangle at one crossing
leaves a bigon that cancels as in R2, after which the survivors of the two sides sit at the same
vertices. Any move whose survivors cannot be matched is built through minimal models.
"""

import logging
from collections import defaultdict, deque
from itertools import product
from typing import Callable, Hashable

import numpy as np

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.ChainMap import ChainMap, label_map
from khlab.complexes.khovanov import build_complex
from khlab.cube.Cochain import Cochain, EdgeAssignmentException, faces
from khlab.datatypes import Constants, Theory
from khlab.diagram.MovieScript import Move, apply_move
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.diagram.rewriting import Rewrite, kink_loop, reverse
from khlab.homology.elimination import CancellationException, Elimination
from khlab.homology.models import model_quasi_isomorphism
from khlab.moves.cancellation import CancellationSite, cancel_pairs, merge_pairs, split_pairs
from khlab.moves.ChainMapWitness import ChainMapWitness
from khlab.resolution.Resolution import circle_correspondence
from khlab.resolution.ResolutionCube import ResolutionCube

logger = logging.getLogger(__name__)

MOVE_THEORIES = (Constants.EVEN, Constants.ODD, Constants.MOD2)


def check_theory(c: BigradedComplex):
    if c.theory not in MOVE_THEORIES:
        raise ValueError(f"Maps for moves are built for the even, odd and mod 2 theories, not {c.theory}")
    if c.cube is None or c.epsilon is None:
        raise ValueError(f"{c} does not remember its cube of resolutions and edge assignment")


## Where to cancel
def cancellation_sites(step: Rewrite, cube: ResolutionCube) -> tuple[list[tuple[str, CancellationSite]], dict[int, int]]:
    """! Cancellations to run in the larger complex, merges first, and the states of the new crossings
    at the face that survives
    @raise CancellationException: the move region has no small circle to cancel against
    """
    match step.kind:
        case "R1+" | "R1-":
            (k,) = step.new_crossings
            loop, state = kink_loop(step.larger, k)
            return [("merge" if state == 0 else "split", CancellationSite(k, loop))], {k: state}
        case "R2+" | "R2-":
            ca, cb = sorted(step.new_crossings)
            bigon = frozenset(step.loop_labels)
            label = step.loop_labels[0]
            for sa, sb in product((0, 1), repeat=2):
                resolution = cube.resolution(sa << ca | sb << cb)
                if resolution.labels[resolution.circle_of_label[label]] == bigon:
                    break
            else:
                raise CancellationException(f"Edges {sorted(bigon)} never close up into a circle")
            state = {ca: sa, cb: sb}
            sites = [
                ("merge" if state[k] == 0 else "split", CancellationSite(k, label, {other: state[other]}))
                for k, other in ((ca, cb), (cb, ca))
            ]
            if sorted(kind for kind, _ in sites) != ["merge", "split"]:
                raise CancellationException(f"The bigon circle closes at {state}; expected one merge and one split")
            sites.sort(key=lambda site: site[0] != "merge")
            return sites, {ca: 1 - sa, cb: 1 - sb}
        case _:
            raise NotImplementedError(f"No cancellation pattern for a {step.kind} move")


def _closing_states(cube: ResolutionCube, triangle: tuple[int, ...], inner: frozenset[int]) -> dict[int, int] | None:
    """! States of the triangle crossings at which its inner edges close up into one circle"""
    for states in product((0, 1), repeat=len(triangle)):
        resolution = cube.resolution(sum(s << c for s, c in zip(states, triangle)))
        if inner in resolution.labels:
            return dict(zip(triangle, states))
    return None


def triangle_sites(step: Rewrite, cube: ResolutionCube) -> tuple[list[tuple[str, CancellationSite]], int, int]:
    """! Cancellations reducing both sides of an R3 move, the crossing c held closed and its closed state.

    Closing the triangle at c leaves a bigon between the other two crossings a and b; when the strand
    through a and b passes over both or under both, the bigon cancels as in an R2 move.
    @raise CancellationException: no crossing of the triangle leaves a cancellable bigon
    """
    d = step.before
    inner = frozenset(step.loop_labels)
    triangle = tuple(sorted({c for label in inner for c, _ in d.occurrences[label]}))
    closed = _closing_states(cube, triangle, inner)
    if closed is None:
        raise CancellationException(f"Edges {sorted(inner)} never close up into a circle")
    label = min(inner)
    for c in triangle:
        a, b = (k for k in triangle if k != c)
        (side,) = [m for m in inner if {k for k, _ in d.occurrences[m]} == {a, b}]
        if len({p % 2 for _, p in d.occurrences[side]}) != 1 or closed[a] == closed[b]:
            continue
        sites = [
            ("merge" if closed[k] == 0 else "split", CancellationSite(k, label, {other: closed[other], c: closed[c]}))
            for k, other in ((a, b), (b, a))
        ]
        sites.sort(key=lambda site: site[0] != "merge")
        return sites, c, closed[c]
    raise CancellationException(f"No crossing of the triangle {[c + 1 for c in triangle]} leaves a cancellable bigon")


def vertex_maps(step: Rewrite, corner: dict[int, int]) -> tuple[Callable[[int], int], Callable[[int], int]]:
    """! (embed, compress) between vertices of the smaller cube and the surviving face of the larger one"""
    kept = step.kept
    base = sum(state << k for k, state in corner.items())

    def embed(v: int) -> int:
        return base | sum(1 << c for idx, c in enumerate(kept) if v >> idx & 1)

    def compress(w: int) -> int:
        return sum((w >> c & 1) << idx for idx, c in enumerate(kept))

    return embed, compress


def pinned_assignment(cube: ResolutionCube, epsilon: Cochain, n: int, embed: Callable[[int], int]) -> Cochain:
    """! Edge assignment of the larger cube agreeing with epsilon on the embedded smaller cube when possible"""
    fixed = {(embed(u), embed(v)): epsilon[(u, v)] for u, v in faces(n, 1)}
    try:
        return cube.edge_assignment(fixed=fixed)
    except EdgeAssignmentException:
        logger.warning("No edge assignment of %s extends the smaller one; solving freely", cube.diagram)
        return cube.edge_assignment()


def restricted_assignment(epsilon: Cochain, n: int, embed: Callable[[int], int]) -> Cochain:
    return Cochain(n, 1, {(u, v): epsilon[(embed(u), embed(v))] for u, v in faces(n, 1)})


## Identification of the survivors
def identify(reduced: BigradedComplex, small: BigradedComplex, step: Rewrite, compress: Callable[[int], int]):
    """! Bijection from the surviving generators to the generators of the smaller complex, or None.

    Circles go to circles through the edge labels; circles living inside the move region are dropped.
    """
    large_cube, small_cube = reduced.cube, small.cube
    grading = {g: ij for ij, gens in small.generators.items() for g in gens}
    psi = {}
    for ij, gens in reduced.generators.items():
        for g in gens:
            w, monomial = g
            v = compress(w)
            try:
                corr = circle_correspondence(large_cube.resolution(w), small_cube.resolution(v), step.label_map)
            except ValueError:
                return None
            image = (v, tuple(sorted(corr[c] for c in monomial if corr[c] is not None)))
            if grading.get(image) != ij:
                return None
            psi[g] = image
    if len(set(psi.values())) != len(psi) or len(psi) != len(grading):
        return None
    return psi


def match_signs(reduced: BigradedComplex, small: BigradedComplex, psi: dict) -> dict[Hashable, int] | None:
    """! Signs ζ with ∂_small(ψa) = Σ ζ(a)ζ(b)·∂(a → b)·ψb, found by walking the differential, or None"""
    mod2 = reduced.is_mod2()
    links: dict[Hashable, list[tuple[Hashable, int]]] = defaultdict(list)
    for i, j in set(reduced.bigradings()) | set(small.bigradings()):
        sources = reduced.generators.get((i, j), [])
        targets = reduced.generators.get((i + reduced.degree, j), [])
        if not sources or not targets:
            continue
        here, there = small.index(i, j), small.index(i + small.degree, j)
        ours = reduced.differential(i, j)
        theirs = small.differential(i, j)[np.ix_([there[psi[g]] for g in targets], [here[psi[g]] for g in sources])]
        if mod2:
            if not np.array_equal(ours % 2, theirs % 2):
                return None
            continue
        if not np.array_equal(np.abs(ours), np.abs(theirs)):
            return None
        for r, c in zip(*np.nonzero(ours)):
            ratio = int(ours[r, c]) // int(theirs[r, c])
            links[sources[c]].append((targets[r], ratio))
            links[targets[r]].append((sources[c], ratio))
    zeta: dict[Hashable, int] = {}
    for g in psi:
        if g in zeta:
            continue
        zeta[g] = 1
        queue = deque([g])
        while queue:
            a = queue.popleft()
            for b, ratio in links[a]:
                wanted = zeta[a] * ratio
                if b not in zeta:
                    zeta[b] = wanted
                    queue.append(b)
                elif zeta[b] != wanted:
                    return None
    return zeta


def match_triangle_survivors(reduced: BigradedComplex, other: BigradedComplex, inner: frozenset[int]):
    """! Bijection between the survivors of the two sides of an R3 move, or None.

    Generators stay at their vertex; circles are matched by the edge labels they carry outside the triangle.
    """
    grading = {g: ij for ij, gens in other.generators.items() for g in gens}
    psi = {}
    for ij, gens in reduced.generators.items():
        for g in gens:
            w, monomial = g
            here, there = reduced.cube.resolution(w), other.cube.resolution(w)
            outer = {labels - inner: x for x, labels in enumerate(there.labels)}
            if len(outer) != len(there.labels) or frozenset() in outer:
                return None
            try:
                image = (w, tuple(sorted(outer[here.labels[x] - inner] for x in monomial)))
            except KeyError:
                return None
            if grading.get(image) != ij:
                return None
            psi[g] = image
    if len(set(psi.values())) != len(psi) or len(psi) != len(grading):
        return None
    return psi


## Maps
def model_map(source: BigradedComplex, target: BigradedComplex, kind: str) -> ChainMapWitness:
    """! Quasi-isomorphism through minimal models; mod 2 maps are reductions of the even ones"""
    if source.is_mod2():
        lift = [build_complex(c.diagram, Constants.EVEN, cube=c.cube, epsilon=c.epsilon) for c in (source, target)]
        integral = model_quasi_isomorphism(*lift, name=kind)
        f = ChainMap(source, target, {ij: m % 2 for ij, m in integral.blocks.items()}, name=kind)
    else:
        f = model_quasi_isomorphism(source, target, name=kind)
    return ChainMapWitness.certify(f, kind, check_quasi_iso=True, canonical=True)


def _cancel_sites(large: BigradedComplex, sites: list[tuple[str, CancellationSite]]):
    """! Run the cancellations in order; the reduced complex and (engine, reduced) for every stage"""
    stages: list[tuple[Elimination, BigradedComplex]] = []
    current = large
    for kind, site in sites:
        pairs = merge_pairs(current, site) if kind == "merge" else split_pairs(current, site)
        current, engine = cancel_pairs(current, pairs)
        stages.append((engine, current))
    return current, stages


def _projection(stages: list[tuple[Elimination, BigradedComplex]]) -> ChainMap:
    f = stages[0][0].projection(stages[0][1])
    for engine, reduced in stages[1:]:
        f = engine.projection(reduced).compose(f)
    return f


def _inclusion(stages: list[tuple[Elimination, BigradedComplex]], f: ChainMap) -> ChainMap:
    """! f followed by the inclusions undoing the stages"""
    for engine, reduced in reversed(stages):
        f = engine.inclusion(reduced).compose(f)
    return f


def _cancellation_map(source: BigradedComplex, step: Rewrite) -> ChainMapWitness:
    theory = source.theory
    insertion = step.is_insertion
    large_cube = ResolutionCube(step.larger) if insertion else source.cube
    sites, corner = cancellation_sites(step, large_cube)
    embed, compress = vertex_maps(step, corner)
    n = step.smaller.n
    if insertion:
        small = source
        epsilon = pinned_assignment(large_cube, source.epsilon, n, embed)
        large = build_complex(step.larger, theory, cube=large_cube, epsilon=epsilon)
    else:
        large = source
        small = build_complex(step.smaller, theory, epsilon=restricted_assignment(source.epsilon, n, embed))

    current, stages = _cancel_sites(large, sites)
    logger.debug("%s: %d generators of %s survive", step.kind, current.total_rank(), large)

    psi = identify(current, small, step, compress)
    zeta = match_signs(current, small, psi) if psi is not None else None
    if zeta is None:
        logger.warning("Survivors of %s do not match %s; falling back to minimal models", step.kind, small)
        return model_map(source, large if insertion else small, step.kind)

    if insertion:
        f = _inclusion(stages, label_map(small, current, {psi[g]: {g: zeta[g]} for g in psi}, name="ψ⁻¹"))
    else:
        f = label_map(current, small, {g: {psi[g]: zeta[g]} for g in psi}, name="ψ").compose(_projection(stages))
    f.name = step.kind
    return ChainMapWitness.certify(f, step.kind, check_quasi_iso=True)


def _triangle_map(source: BigradedComplex, step: Rewrite) -> ChainMapWitness:
    """! Reduce both sides of an R3 move by the bigon cancellation and match what survives"""
    theory = source.theory
    sites, c, state = triangle_sites(step, source.cube)
    inner = frozenset(step.loop_labels)
    n = step.before.n
    cube = ResolutionCube(step.after)
    open_face = {(u, v): source.epsilon[(u, v)] for u, v in faces(n, 1) if u >> c & 1 != state and v >> c & 1 != state}
    try:
        epsilon = cube.edge_assignment(fixed=open_face)
    except EdgeAssignmentException:
        epsilon = cube.edge_assignment()
    target = build_complex(step.after, theory, cube=cube, epsilon=epsilon)
    if triangle_sites(reverse(step), cube) != (sites, c, state):
        raise CancellationException(f"The two sides of {step.kind} close their triangles differently")

    reduced, stages = _cancel_sites(source, sites)
    other, other_stages = _cancel_sites(target, sites)
    psi = match_triangle_survivors(reduced, other, inner)
    zeta = match_signs(reduced, other, psi) if psi is not None else None
    if zeta is None:
        raise CancellationException(f"Survivors of {step.kind} do not match")
    middle = label_map(reduced, other, {g: {psi[g]: zeta[g]} for g in psi}, name="ψ")
    f = _inclusion(other_stages, middle.compose(_projection(stages)))
    f.name = step.kind
    return ChainMapWitness.certify(f, step.kind, check_quasi_iso=True)


def reidemeister_step(source: BigradedComplex, step: Rewrite) -> ChainMapWitness:
    """! Quasi-isomorphism from the complex of step.before (given) to a complex of step.after"""
    check_theory(source)
    match step.kind:
        case "R1+" | "R1-" | "R2+" | "R2-":
            return _cancellation_map(source, step)
        case "R3":
            try:
                return _triangle_map(source, step)
            except CancellationException as e:
                logger.warning("%s; falling back to minimal models for %s", e, step)
                return model_map(source, build_complex(step.after, source.theory), step.kind)
        case _:
            raise NotImplementedError(f"{step.kind} is not a Reidemeister move")


def reidemeister_map(
    d: OrientedDiagram, move: Move | Rewrite, theory: Theory | str = Constants.EVEN
) -> ChainMapWitness:
    """! Chain map Kc(d) -> Kc(d') for a Reidemeister move, verified to be a quasi-isomorphism"""
    step = move if isinstance(move, Rewrite) else apply_move(d, move)
    witness = reidemeister_step(build_complex(d, theory), step)
    logger.info(
        "%s map %s -> %s: chain map %s, quasi-isomorphism %s",
        step.kind,
        d,
        step.after,
        witness.is_chain_map,
        witness.is_quasi_iso,
    )
    return witness
