"""The signed Burnside functor of a diagram: the odd Khovanov cube read as correspondences between sets of
Khovanov generators, with the 2-morphisms on the square faces made explicit."""

import logging
from collections import defaultdict
from typing import Callable, Hashable

import numpy as np
from tqdm import tqdm

from khlab.burnside.SignedCorrespondence import CoherenceException, SignedCorrespondence
from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.khovanov import build_complex
from khlab.cube.Cochain import Cochain, Face, faces
from khlab.cube.CubeVertex import standard_sign
from khlab.datatypes import Bigrading, Constants, Theory
from khlab.diagram.OrientedDiagram import OrientedDiagram
from khlab.resolution.ResolutionCube import ResolutionCube
from khlab.utils import popcount

logger = logging.getLogger(__name__)

Edge = tuple[int, int]
# Bijection between the composite correspondences of a square, stored in both directions
Matching = dict[Hashable, Hashable]


class SignedBurnsideFunctor:
    """! Functor from the cube category 2^n to the signed Burnside category.

    `objects[v]` is the set of generators over vertex v and `edges[(u, v)]` the correspondence F(φ_{u,v})
    from the generators at u to those at v (u ≥₁ v). `squares[square]` matches the two composites
    F(φ_{v,w})∘F(φ_{u,v}) and F(φ_{v2,w})∘F(φ_{u,v2}); composite elements are pairs of edge elements.

    `suspension` is the stable shift r: the homological grading of a generator over v is |v| + r.
    """

    def __init__(
        self,
        n: int,
        objects: dict[int, list[Hashable]],
        edges: dict[Edge, SignedCorrespondence],
        quantum: dict[Hashable, int],
        *,
        suspension: int = 0,
        theory: Theory = Constants.ODD,
        name: str = "",
        squares: dict[Face, Matching] | None = None,
        involution: dict[Hashable, Hashable] | None = None,
        show_progress_bar: bool = False,
    ):
        self.n = n
        self.objects: dict[int, list[Hashable]] = {v: sorted(objects.get(v, [])) for v in range(1 << n)}
        self.vertex_of = {g: v for v, gens in self.objects.items() for g in gens}
        self.quantum = {g: quantum[g] for g in self.vertex_of}
        self.suspension = suspension
        self.theory = theory
        self.name = name
        # Free ℤ/2 action of a doubled functor
        self.involution = involution
        unknown = set(edges) - set(faces(n, 1))
        if unknown:
            raise ValueError(f"{sorted(unknown)} are not edges of the {n}-cube")
        self.edges: dict[Edge, SignedCorrespondence] = {}
        for u, v in faces(n, 1):
            correspondence = edges.get((u, v)) or SignedCorrespondence(u, v)
            correspondence.check(set(self.objects[u]), set(self.objects[v]))
            self.edges[(u, v)] = correspondence
        self.square_at: dict[Edge, Face] = {(sq[0], sq[3]): sq for sq in faces(n, 2)}
        self.ladybugs = 0
        self.squares = squares if squares is not None else self._match_squares(show_progress_bar)
        self.diagram = None
        self.cube = None
        self.epsilon = None

    def attach(self, diagram, cube=None, epsilon=None) -> "SignedBurnsideFunctor":
        self.diagram, self.cube, self.epsilon = diagram, cube, epsilon
        return self

    def _derived(self, f: "SignedBurnsideFunctor") -> "SignedBurnsideFunctor":
        return f.attach(self.diagram, self.cube, self.epsilon)

    def composites(self, square: Face) -> tuple[SignedCorrespondence, SignedCorrespondence]:
        u, v, v2, w = square
        return self.edges[(u, v)].then(self.edges[(v, w)]), self.edges[(u, v2)].then(self.edges[(v2, w)])

    def _match_squares(self, show_progress_bar: bool = False) -> dict[Face, Matching]:
        """! The unique sign-respecting bijection on every square
        @raise CoherenceException: some A_{x,y} has no such bijection or more than one
        """
        squares = faces(self.n, 2)
        result = {}
        for square in tqdm(squares, desc="Squares") if show_progress_bar else squares:
            first, second = self.composites(square)
            one, two = first.fibers(), second.fibers()
            matching: Matching = {}
            for xy in set(one) | set(two):
                left = _by_sign(first, one.get(xy, []), square, xy)
                right = _by_sign(second, two.get(xy, []), square, xy)
                if set(left) != set(right):
                    raise CoherenceException(f"No sign-respecting bijection on A_{xy} of square {square} in {self.name}")
                if len(left) == 2:
                    self.ladybugs += 1
                for sign, a in left.items():
                    matching[a] = right[sign]
                    matching[right[sign]] = a
            result[square] = matching
        return result

    ## Sizes
    def number_of_objects(self) -> int:
        return len(self.vertex_of)

    def number_of_elements(self) -> int:
        return sum(len(c) for c in self.edges.values())

    def grading(self, g: Hashable) -> Bigrading:
        return popcount(self.vertex_of[g]) + self.suspension, self.quantum[g]

    ## Restriction
    def restrict(self, keep: Callable[[Hashable], bool], name: str = "") -> "SignedBurnsideFunctor":
        """! Functor on the selected generators; squares keep their matchings on surviving elements"""
        objects = {v: [g for g in gens if keep(g)] for v, gens in self.objects.items()}
        edges = {e: c.restrict(keep) for e, c in self.edges.items()}
        alive = {a for c in edges.values() for a in c.elements}
        squares = {
            sq: {ab: cd for ab, cd in m.items() if set(ab) <= alive and set(cd) <= alive} for sq, m in self.squares.items()
        }
        involution = None if self.involution is None else {g: h for g, h in self.involution.items() if keep(g)}
        return self._derived(
            SignedBurnsideFunctor(
                self.n,
                objects,
                edges,
                self.quantum,
                suspension=self.suspension,
                theory=self.theory,
                name=name or self.name,
                squares=squares,
                involution=involution,
            )
        )

    def to_text(self) -> str:
        """! Per-edge correspondence listing followed by the matchings on the square faces"""
        blocks = [c.to_text() for _, c in sorted(self.edges.items())]
        for square, matching in self.squares.items():
            lines = [f"square {' '.join(f'{v:b}' for v in square)}"]
            lines += [f"  {a} <-> {b}" for a, b in sorted(matching.items(), key=str) if str(a) < str(b)]
            blocks.append("\n".join(lines))
        return "\n".join(blocks)

    def __str__(self):
        return f"SignedBurnsideFunctor({self.name}, n={self.n}, objects={self.number_of_objects()})"

    def __jsonrepr__(self):
        return {
            "objects": self.number_of_objects(),
            "edges": self.number_of_elements(),
            "squares": len(self.squares),
            "ladybugs": self.ladybugs,
        }


def _by_sign(c: SignedCorrespondence, elements: list[Hashable], square: Face, xy) -> dict[int, Hashable]:
    result: dict[int, Hashable] = {}
    for a in elements:
        sign = c.sign(a)
        if sign in result:
            raise CoherenceException(f"A_{xy} of square {square} has two elements of sign {sign:+d}")
        result[sign] = a
    return result


## Construction
def functor_of_complex(c: BigradedComplex, show_progress_bar: bool = False) -> SignedBurnsideFunctor:
    """! Read the signed Burnside functor off an odd Khovanov complex.

    The entry of the odd differential from y at v to x at u is (-1)^s(u,v) σ; it becomes the element
    (x, y) of F(φ_{u,v}) with sign σ.
    @raise CoherenceException: an entry is not 0 or ±1
    """
    if c.theory != Constants.ODD or c.degree != 1 or c.diagram is None:
        raise ValueError(f"Expected an odd Khovanov complex built from a diagram, got {c}")
    objects: dict[int, list[Hashable]] = defaultdict(list)
    quantum = {}
    for (_, j), gens in c.generators.items():
        for g in gens:
            objects[g[0]].append(g)
            quantum[g] = j
    edges: dict[Edge, SignedCorrespondence] = {}
    for (i, j), matrix in c.differentials.items():
        sources, targets = c.generators[(i, j)], c.generators[(i + 1, j)]
        for r, col in zip(*np.nonzero(matrix)):
            y, x = sources[int(col)], targets[int(r)]
            u, v = x[0], y[0]
            entry = int(matrix[r, col])
            if entry not in (1, -1):
                raise CoherenceException(f"Odd differential entry {entry} from {y} to {x} is not a sign")
            sign = -entry if standard_sign(u, v) else entry
            edges.setdefault((u, v), SignedCorrespondence(u, v)).add((x, y), x, y, sign)
    d = c.diagram
    f = SignedBurnsideFunctor(
        d.n,
        dict(objects),
        edges,
        quantum,
        suspension=-d.n_minus,
        name=f"F_o({d})",
        show_progress_bar=show_progress_bar,
    )
    logger.info(
        "Signed Burnside functor of %s: %d objects, %d edge elements, %d ladybugs",
        d,
        f.number_of_objects(),
        f.number_of_elements(),
        f.ladybugs,
    )
    return f.attach(d, c.cube, c.epsilon)


def build_functor(
    d: OrientedDiagram,
    *,
    cube: ResolutionCube | None = None,
    epsilon: Cochain | None = None,
    show_progress_bar: bool = False,
) -> SignedBurnsideFunctor:
    return functor_of_complex(build_complex(d, Constants.ODD, cube=cube, epsilon=epsilon), show_progress_bar)


## Totalization
def totalize(f: SignedBurnsideFunctor) -> BigradedComplex:
    """! Tot(F): ⊕_v ℤ⟨F(v)⟩ with differential Σ (-1)^s(u,v) 𝒜(F(φ_{u,v})), lowering the homological grading"""
    generators: dict[Bigrading, list[Hashable]] = defaultdict(list)
    for g in f.vertex_of:
        generators[f.grading(g)].append(g)
    for gens in generators.values():
        gens.sort()
    position = {g: (ij, k) for ij, gens in generators.items() for k, g in enumerate(gens)}
    blocks: dict[Bigrading, np.ndarray] = {}
    for (u, v), correspondence in f.edges.items():
        sign = -1 if standard_sign(u, v) else 1
        for s, t, sigma in correspondence.elements.values():
            (i, j), col = position[s]
            target, row = position[t]
            if target != (i - 1, j):
                raise CoherenceException(f"Element {s} -> {t} of {f.name} does not preserve the quantum grading")
            if (i, j) not in blocks:
                blocks[(i, j)] = np.zeros((len(generators[target]), len(generators[(i, j)])), dtype=np.int64)
            blocks[(i, j)][row, col] += sign * sigma
    xi_action = None
    if f.involution is not None:
        xi_action = {}
        for ij, gens in generators.items():
            xi = np.zeros((len(gens), len(gens)), dtype=np.int64)
            for k, g in enumerate(gens):
                xi[position[f.involution[g]][1], k] = 1
            xi_action[ij] = xi
    c = BigradedComplex(f.theory, dict(generators), blocks, degree=-1, xi_action=xi_action, name=f"Tot({f.name})")
    return c.attach(f.diagram, f.cube, f.epsilon)


## Operations on functors
def double(f: SignedBurnsideFunctor) -> SignedBurnsideFunctor:
    """! Free ℤ/2-equivariant functor 𝒟F on {1, ξ} × F(v): the element (p, a) runs from (p, s(a)) to
    (p + [σ(a) = -1], t(a)), all signs +1. Generators are (p, *g) with p = 1 standing for ξ."""
    objects = {v: [(p, *g) for p in (0, 1) for g in gens] for v, gens in f.objects.items()}
    quantum = {(p, *g): j for g, j in f.quantum.items() for p in (0, 1)}
    edges = {}
    for e, correspondence in f.edges.items():
        doubled = SignedCorrespondence(*e)
        for a, (s, t, sign) in correspondence.elements.items():
            for p in (0, 1):
                doubled.add((p, a), (p, *s), ((p + (sign < 0)) % 2, *t), 1)
        edges[e] = doubled
    involution = {(p, *g): (1 - p, *g) for g in f.vertex_of for p in (0, 1)}
    return f._derived(
        SignedBurnsideFunctor(
            f.n,
            objects,
            edges,
            quantum,
            suspension=f.suspension,
            theory=Constants.UNIFIED,
            name=f"D{f.name}",
            involution=involution,
        )
    )


def sign_reassign(f: SignedBurnsideFunctor, zeta: dict[Hashable, int]) -> SignedBurnsideFunctor:
    """! Rescale every element a by ζ(s(a))·ζ(t(a)); the square matchings are rebuilt
    @raise ValueError: ζ misses a generator or takes a value other than ±1
    """
    missing = [g for g in f.vertex_of if zeta.get(g) not in (1, -1)]
    if missing:
        raise ValueError(f"Sign reassignment is not a ±1 function on {missing[:5]}")
    edges = {e: c.rescaled(zeta.__getitem__) for e, c in f.edges.items()}
    return f._derived(
        SignedBurnsideFunctor(
            f.n, f.objects, edges, f.quantum, suspension=f.suspension, theory=f.theory, name=f"{f.name} reassigned"
        )
    )


def random_signs(f: SignedBurnsideFunctor, seed: int = 0) -> dict[Hashable, int]:
    rng = np.random.default_rng(seed)
    return {g: int(rng.choice((1, -1))) for g in sorted(f.vertex_of)}


def subfunctor(
    f: SignedBurnsideFunctor, selection: set[Hashable]
) -> tuple[SignedBurnsideFunctor, SignedBurnsideFunctor]:
    """! Cofibration pair G -> F -> H with G on the selected generators and H on the rest
    @raise CoherenceException: some element runs from a selected generator to an unselected one
    """
    for e, correspondence in f.edges.items():
        for a, (s, t, _) in correspondence.elements.items():
            if s in selection and t not in selection:
                raise CoherenceException(f"Selection is not closed: {s} -> {t} leaves it along edge {e}")
    sub = f.restrict(lambda g: g in selection, f"{f.name} sub")
    quotient = f.restrict(lambda g: g not in selection, f"{f.name} quotient")
    return sub, quotient


def quantum_summands(f: SignedBurnsideFunctor) -> dict[int, SignedBurnsideFunctor]:
    """! F as the coproduct of its restrictions to single quantum gradings"""
    return {
        j: f.restrict(lambda g, j=j: f.quantum[g] == j, f"{f.name} q={j}") for j in sorted(set(f.quantum.values()))
    }


def coproduct(
    f: SignedBurnsideFunctor, g: SignedBurnsideFunctor, tags: tuple[Hashable, Hashable] = (0, 1)
) -> SignedBurnsideFunctor:
    """! F ⊔ G on the same cube; generators and elements are tagged to stay distinct"""
    if (f.n, f.suspension, f.theory) != (g.n, g.suspension, g.theory):
        raise ValueError("Coproduct of functors on different cubes, shifts or theories")
    objects = {v: [(tag, x) for tag, h in zip(tags, (f, g)) for x in h.objects[v]] for v in f.objects}
    quantum = {(tag, x): j for tag, h in zip(tags, (f, g)) for x, j in h.quantum.items()}
    edges = {}
    for e in f.edges:
        union = SignedCorrespondence(*e)
        for tag, h in zip(tags, (f, g)):
            for a, (s, t, sign) in h.edges[e].elements.items():
                union.add((tag, a), (tag, s), (tag, t), sign)
        edges[e] = union
    squares = {}
    for square in f.squares:
        squares[square] = {
            ((tag, a), (tag, b)): ((tag, a2), (tag, b2))
            for tag, h in zip(tags, (f, g))
            for (a, b), (a2, b2) in h.squares[square].items()
        }
    return SignedBurnsideFunctor(
        f.n,
        objects,
        edges,
        quantum,
        suspension=f.suspension,
        theory=f.theory,
        name=f"{f.name} ⊔ {g.name}",
        squares=squares,
    )


def forget_signs(f: SignedBurnsideFunctor) -> SignedBurnsideFunctor:
    """! Image in the ordinary Burnside category; the matchings of F are kept"""
    return f._derived(
        SignedBurnsideFunctor(
            f.n,
            f.objects,
            {e: c.unsigned() for e, c in f.edges.items()},
            f.quantum,
            suspension=f.suspension,
            theory=Constants.EVEN,
            name=f"forget {f.name}",
            squares=f.squares,
        )
    )


def restrict_to_face(f: SignedBurnsideFunctor, fixed: dict[int, int]) -> SignedBurnsideFunctor:
    """! F∘ι for the face inclusion ι fixing the coordinates in `fixed` (0-based) to the given bits.

    The face is relabelled as the cube on the free coordinates, in order, and the suspension grows by
    |ι|, the number of coordinates fixed to 1, so generators keep their homological grading.
    """
    if any(k not in range(f.n) or b not in (0, 1) for k, b in fixed.items()):
        raise ValueError(f"{fixed} does not describe a face of the {f.n}-cube")
    free = [k for k in range(f.n) if k not in fixed]

    def on_face(v: int) -> bool:
        return all((v >> k & 1) == b for k, b in fixed.items())

    def compress(v: int) -> int:
        return sum((v >> k & 1) << idx for idx, k in enumerate(free))

    objects = {compress(v): gens for v, gens in f.objects.items() if on_face(v)}
    kept = {g for gens in objects.values() for g in gens}
    edges = {
        (compress(u), compress(v)): SignedCorrespondence(compress(u), compress(v), dict(c.elements))
        for (u, v), c in f.edges.items()
        if on_face(u) and on_face(v)
    }
    squares = {tuple(compress(x) for x in sq): m for sq, m in f.squares.items() if all(on_face(x) for x in sq)}
    involution = None if f.involution is None else {g: h for g, h in f.involution.items() if g in kept}
    return f._derived(
        SignedBurnsideFunctor(
            len(free),
            objects,
            edges,
            {g: f.quantum[g] for g in kept},
            suspension=f.suspension + sum(fixed.values()),
            theory=f.theory,
            name=f"{f.name} on face {fixed}",
            squares=squares,
            involution=involution,
        )
    )
