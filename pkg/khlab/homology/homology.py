import logging
from collections import defaultdict

import multiprocessing_on_dill as multiprocessing
import numpy as np
from tqdm import tqdm

from khlab.complexes.BigradedComplex import BigradedComplex
from khlab.complexes.ChainMap import ChainMap, mapping_cone
from khlab.datatypes import Bigrading, Coefficient, Constants
from khlab.homology.elimination import eliminate
from khlab.homology.HomologyGroup import HomologyGroup
from khlab.homology.linalg import f2_inverse, f2_nullspace, f2_rank, f2_rref, to_f2
from khlab.homology.smith import identity, invariant_factors, smith_normal_form, to_object

logger = logging.getLogger(__name__)


## Single groups
def _z_group(i: int, j: int, n: int, d_in: np.ndarray, d_out: np.ndarray, representatives: bool) -> HomologyGroup:
    if not representatives:
        r_out = len(invariant_factors(d_out))
        factors = invariant_factors(d_in)
        return HomologyGroup(i, j, Constants.Z, n - r_out - len(factors), [t for t in factors if t > 1])

    if d_out.size:
        form = smith_normal_form(d_out)
        r, v, v_inv = form.rank, form.v, form.v_inv
    else:
        r, v, v_inv = 0, identity(n), identity(n)
    k = n - r
    if k == 0:
        empty = np.zeros((n, 0), dtype=object)
        return HomologyGroup(i, j, Constants.Z, 0, [], empty, empty.T.copy())
    kernel, to_kernel = v[:, r:], v_inv[r:, :]
    boundaries = to_kernel @ to_object(d_in) if d_in.shape[1] else np.zeros((k, 0), dtype=object)
    if boundaries.size:
        form = smith_normal_form(boundaries)
        u, u_inv, diagonal = form.u, form.u_inv, form.diagonal
    else:
        u, u_inv, diagonal = identity(k), identity(k), []
    s = sum(1 for x in diagonal if x != 0)
    torsion_rows = [t for t in range(s) if diagonal[t] > 1]
    selected = torsion_rows + list(range(s, k))
    generators = (kernel @ u_inv)[:, selected]
    projector = (u @ to_kernel)[selected, :]
    return HomologyGroup(i, j, Constants.Z, k - s, [diagonal[t] for t in torsion_rows], generators, projector)


def _f2_group(i: int, j: int, n: int, d_in: np.ndarray, d_out: np.ndarray, representatives: bool) -> HomologyGroup:
    if not representatives:
        return HomologyGroup(i, j, Constants.F2, n - f2_rank(d_out) - f2_rank(d_in))
    kernel, _ = f2_nullspace(d_out, cols=n)
    image = to_f2(d_in)
    m, k = image.shape[1], kernel.shape[1]
    stack = np.hstack([image, kernel, np.eye(n, dtype=np.uint8)])
    _, pivots = f2_rref(stack)
    classes = [p for p in pivots if m <= p < m + k]
    inverse = f2_inverse(stack[:, pivots]).astype(object)
    rows = [pivots.index(p) for p in classes]
    return HomologyGroup(
        i, j, Constants.F2, len(classes), [], stack[:, classes].astype(object), inverse[rows, :].reshape(len(rows), n)
    )


def _q_group(i: int, j: int, n: int, d_in: np.ndarray, d_out: np.ndarray) -> HomologyGroup:
    return HomologyGroup(i, j, Constants.Q, n - len(invariant_factors(d_out)) - len(invariant_factors(d_in)))


def homology_at(
    c: BigradedComplex, i: int, j: int, coefficient: Coefficient | str = Constants.Z, representatives: bool = True
) -> HomologyGroup:
    """! Homology of the complex at (i, j), over ℤ with representatives by default.

    Over ℚ only the rank is computed. An integral complex is reduced mod 2 for 𝔽₂ coefficients.
    """
    coefficient = Coefficient.parse_user_input(coefficient)
    if coefficient == Constants.F2 and not c.is_mod2():
        c = c.mod2()
    if coefficient != Constants.F2 and c.is_mod2():
        raise ValueError(f"A mod 2 complex has no homology over {coefficient}")
    n = c.rank(i, j)
    d_in, d_out = c.incoming(i, j), c.differential(i, j)
    match coefficient.name:
        case "Z":
            return _z_group(i, j, n, d_in, d_out, representatives)
        case "F2":
            return _f2_group(i, j, n, d_in, d_out, representatives)
        case "Q":
            return _q_group(i, j, n, d_in, d_out)
        case _:
            raise NotImplementedError(f"Homology over {coefficient} is not supported")


## Whole complexes
def slice_homology(c: BigradedComplex, coefficient: Coefficient, representatives: bool = False) -> list[HomologyGroup]:
    """! All nonzero groups of a complex concentrated in one quantum grading or a few.

    Without representatives, unit entries are eliminated first and the remainder goes through Smith forms.
    """
    if coefficient == Constants.F2 and not c.is_mod2():
        c = c.mod2()
    work = c if representatives else eliminate(c)[0]
    groups = [homology_at(work, i, j, coefficient, representatives) for i, j in c.bigradings()]
    return [g for g in groups if not g.is_zero()]


def _worker(tasks: list[BigradedComplex], coefficient: Coefficient, representatives: bool, queue):
    for c in tasks:
        queue.put(slice_homology(c, coefficient, representatives))


def homology(
    c: BigradedComplex,
    coefficient: Coefficient | str = Constants.Z,
    *,
    jobs: int = 1,
    representatives: bool = False,
    show_progress_bar: bool = False,
) -> dict[Bigrading, HomologyGroup]:
    """! Nonzero homology groups of every bigrading, sorted by (i, j).

    The differential preserves j, so quantum gradings are independent; with jobs > 1 they are spread
    over worker processes.
    """
    coefficient = Coefficient.parse_user_input(coefficient)
    slices = [c.quantum_slice(j) for j in c.quantum_gradings()]
    results: list[list[HomologyGroup]] = []
    jobs = min(max(1, jobs), multiprocessing.cpu_count(), max(1, len(slices)))
    if jobs == 1:
        for s in tqdm(slices, desc="Quantum gradings") if show_progress_bar else slices:
            results.append(slice_homology(s, coefficient, representatives))
    else:
        logger.info("Computing homology of %d quantum gradings on %d processes", len(slices), jobs)
        queue = multiprocessing.Queue()
        workers = [
            multiprocessing.Process(target=_worker, args=(slices[k::jobs], coefficient, representatives, queue))
            for k in range(jobs)
        ]
        for p in workers:
            p.start()
        progress = tqdm(total=len(slices), desc="Quantum gradings") if show_progress_bar else None
        for _ in slices:
            results.append(queue.get())
            if progress is not None:
                progress.update(1)
        for p in workers:
            p.join()
        if progress is not None:
            progress.close()
    groups = {g.bigrading: g for part in results for g in part}
    return dict(sorted(groups.items()))


def euler_from_homology(groups: dict[Bigrading, HomologyGroup]) -> dict[int, int]:
    result: dict[int, int] = defaultdict(int)
    for (i, j), g in groups.items():
        result[j] += (-1) ** (i % 2) * g.rank
    return {j: x for j, x in result.items() if x}


## Maps on homology
def induced_map(f: ChainMap, i: int, j: int, coefficient: Coefficient | str = Constants.Z) -> np.ndarray:
    """! Matrix of the map induced by f from H^{i,j}(source) to the target, in the chosen homology bases
    @raise NotAChainMapException: f does not commute with the differentials
    """
    coefficient = Coefficient.parse_user_input(coefficient)
    f.verify()
    di, dj = f.shift
    source = homology_at(f.source, i, j, coefficient)
    target = homology_at(f.target, i + di, j + dj, coefficient)
    block = to_object(f.block(i, j))
    result = np.zeros((target.number_of_generators, source.number_of_generators), dtype=object)
    for col in range(source.number_of_generators):
        image = block @ source.generators[:, col]  # type: ignore[index]
        if coefficient == Constants.F2:
            image = np.array([int(x) % 2 for x in image], dtype=object)
        result[:, col] = target.class_of(image)
    return result


def xi_action_on_homology(c: BigradedComplex, i: int, j: int) -> np.ndarray:
    """! Action of ξ on the integral homology of the doubled unified complex"""
    if c.xi_action is None:
        raise ValueError(f"{c} carries no ξ-action")
    return induced_map(ChainMap(c, c, dict(c.xi_action), name="ξ"), i, j)


def bockstein(c: BigradedComplex, i: int, j: int) -> np.ndarray:
    """! Bockstein H^{i,j}(C ⊗ 𝔽₂) -> H^{i+1,j}(C ⊗ 𝔽₂) of an integral complex: β[x] = [∂x̃ / 2]"""
    if c.is_mod2() or c.theory == Constants.UNIFIED:
        raise ValueError(f"The Bockstein needs an integral even or odd complex, got {c.theory}")
    source = homology_at(c, i, j, Constants.F2)
    target = homology_at(c, i + c.degree, j, Constants.F2)
    d = to_object(c.differential(i, j))
    result = np.zeros((target.number_of_generators, source.number_of_generators), dtype=object)
    for col in range(source.number_of_generators):
        lift = source.generators[:, col]  # type: ignore[index]
        boundary = d @ lift
        if any(int(x) % 2 for x in boundary):
            raise AssertionError(f"Lift of a mod 2 cycle at {(i, j)} has an odd boundary")
        result[:, col] = target.class_of(np.array([(int(x) // 2) % 2 for x in boundary], dtype=object))
    return result


def bockstein_squares_vanish(c: BigradedComplex) -> bool:
    """! β∘β = 0 in every bigrading"""
    for i, j in c.bigradings():
        first = bockstein(c, i, j)
        second = bockstein(c, i + c.degree, j)
        if first.size and second.size and any(int(x) % 2 for x in (second @ first).flat):
            return False
    return True


def universal_coefficients_check(c: BigradedComplex) -> dict[Bigrading, bool]:
    """! rank over 𝔽₂ = free rank + even torsion here + even torsion in the next homological degree"""
    integral = homology(c, Constants.Z)
    mod2 = homology(c, Constants.F2)
    result = {}
    for i, j in c.bigradings():
        here = integral.get((i, j))
        there = integral.get((i + c.degree, j))
        expected = (here.rank + here.even_torsion() if here else 0) + (there.even_torsion() if there else 0)
        result[(i, j)] = (mod2[(i, j)].rank if (i, j) in mod2 else 0) == expected
    return result


def is_quasi_isomorphism(f: ChainMap, coefficient: Coefficient | str = Constants.Z) -> bool:
    """! f induces isomorphisms on homology in every bigrading, i.e. its mapping cone is acyclic"""
    coefficient = Coefficient.parse_user_input(coefficient)
    if f.mod2 and coefficient != Constants.F2:
        coefficient = Constants.F2
    cone = mapping_cone(f)
    acyclic = not homology(cone, coefficient)
    logger.debug("%s is %sa quasi-isomorphism over %s", f.name, "" if acyclic else "not ", coefficient)
    return acyclic
