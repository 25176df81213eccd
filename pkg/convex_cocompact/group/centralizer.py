"""Fixed subspaces of Abelian subgroups and edge projections of simplex stabilizers."""
from __future__ import annotations

from typing import Sequence

import itertools
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from convex_cocompact.domain import ConvexBody, PolytopeBody, sphere_directions
from convex_cocompact.errors import BudgetError, PreconditionError, TheoremViolation
from convex_cocompact.group.limit import LimitSetSample
from convex_cocompact.projlin import (
    EndomorphismClass,
    ProjectiveMap,
    ProjectivePoint,
    Subspace,
    apply_endo,
    canonical_lift,
    eigenvalue_moduli,
    projective_difference,
    sequence_limit,
)

log = logging.getLogger(__name__)

COMMUTE_TOL = 1e-8
MATCH_TOL = 1e-6
SATURATION_STEPS = 60
FIX_TOL = 1e-8
COMPONENT_ANGLE_TOL = 1e-8
TARGET_GAP = 30.0
MAX_WALK_STEPS = 200


@dataclass(frozen=True)
class CharacterComponent:
    """A summand V_j on which every generator a acts by the scalar characters[a]."""

    space: Subspace
    characters: tuple[float, ...]


@dataclass
class CentralizerSubspace:
    V: Subspace
    components: list[CharacterComponent]
    core_slice: ConvexBody
    fixed_points: list[ProjectivePoint]

    def __post_init__(self) -> None:
        for first, second in itertools.combinations(self.components, 2):
            angle = first.space.min_angle_to(second.space)
            if angle <= COMPONENT_ANGLE_TOL:
                raise TheoremViolation(
                    f"Components with characters {first.characters} and {second.characters} meet at angle {angle:.2e}."
                )


def _check_abelian(maps: Sequence[ProjectiveMap]) -> None:
    if len(maps) == 0:
        raise PreconditionError("Need at least one generator.")
    for a, b in itertools.combinations(maps, 2):
        if projective_difference(canonical_lift(a.lift @ b.lift), canonical_lift(b.lift @ a.lift)) > COMMUTE_TOL:
            raise PreconditionError("Generators do not commute.")
    if not any(eigenvalue_moduli(a)[0] / eigenvalue_moduli(a)[-1] > 1.0 + COMMUTE_TOL for a in maps):
        raise PreconditionError("The group is not of infinite order: no generator has an eigenvalue gap.")


def _real_eigenvalues(matrix: np.ndarray, rel_tol: float = 1e-8) -> list[float]:
    vals = np.linalg.eigvals(matrix)
    scale = max(float(np.max(np.abs(vals))), 1e-300)
    real = np.sort(np.real(vals[np.abs(np.imag(vals)) <= 1e-9 * scale]))
    groups: list[list[float]] = []
    for lam in real:
        if groups and abs(lam - groups[-1][-1]) <= rel_tol * scale:
            groups[-1].append(float(lam))
        else:
            groups.append([float(lam)])
    return [float(np.mean(g)) for g in groups]


def joint_eigenspaces(maps: Sequence[ProjectiveMap]) -> list[tuple[np.ndarray, tuple[float, ...]]]:
    """Common real eigenspaces of commuting maps with their eigenvalues, as orthonormal bases."""
    d = maps[0].dim
    spaces: list[tuple[np.ndarray, tuple[float, ...]]] = [(np.eye(d), ())]
    for g in maps:
        refined = []
        for Q, chars in spaces:
            M = Q.T @ g.lift @ Q
            for lam in _real_eigenvalues(M):
                kernel = scipy.linalg.null_space(M - lam * np.eye(M.shape[0]), rcond=1e-7)
                if kernel.shape[1]:
                    refined.append((Q @ kernel, chars + (lam,)))
        spaces = refined
    return spaces


def saturate(vectors: np.ndarray, maps: Sequence[ProjectiveMap], steps: int = SATURATION_STEPS) -> np.ndarray:
    """Unit vectors a^{+-n} x for n = 0..steps, generator by generator."""
    out = [vectors / np.linalg.norm(vectors, axis=1, keepdims=True)]
    for a in maps:
        for mat in (a.lift, np.linalg.inv(a.lift)):
            cur = out[0]
            for _ in range(steps):
                cur = cur @ mat.T
                cur = cur / np.linalg.norm(cur, axis=1, keepdims=True)
                out.append(cur)
    return np.vstack(out)


def _slice(body: ConvexBody, V: Subspace, anchors: list[np.ndarray], n_rays: int = 64) -> ConvexBody:
    if V.dim == body.dim:
        return body
    center = np.mean([body.chart.lift(a) for a in anchors], axis=0)
    if not body.contains_vector(center, "open"):
        raise TheoremViolation("Omega meets P(V) in an empty set on the sampled data.")
    flat = V.basis @ scipy.linalg.null_space((body.chart.covector @ V.basis)[None, :])
    if flat.shape[1] == 0:
        raise TheoremViolation("P(V) is a single point on the boundary.")
    points = []
    for w in sphere_directions(flat.shape[1], n_rays):
        u = flat @ w
        interval = body.chord(center, u)
        if interval is not None:
            points.append(center + interval[1] * u)
    return PolytopeBody(body.chart, np.array(points))


def centralizer_fixed_subspace(
    A: Sequence[ProjectiveMap],
    hull_sample: LimitSetSample,
    body: ConvexBody,
    match_tol: float = MATCH_TOL,
) -> CentralizerSubspace:
    """Subspace V spanned by the A-fixed points of the closed core, split by characters of A.

    The sample is saturated by powers of the generators, which preserve the core, so that attracting
    eigenlines are approached to within `match_tol`.

    Raises
    ------
    PreconditionError
        If A does not commute or has no element of infinite order.
    TheoremViolation
        If no common eigenline is matched by the sample.
    """
    _check_abelian(A)
    if len(hull_sample) == 0:
        raise TheoremViolation("Empty hull sample.")
    cloud = saturate(np.array([p.direction for p in hull_sample.points]), A)
    components, anchors = [], []
    for Q, chars in joint_eigenspaces(A):
        residual = np.linalg.norm(cloud - (cloud @ Q) @ Q.T, axis=1)
        near = cloud[residual <= match_tol]
        if len(near) == 0:
            continue
        projected = (near @ Q) @ Q.T
        space = Subspace.span(list(projected), rank_tol=1e-4)
        components.append(CharacterComponent(space, chars))
        anchors.append(projected[0])
        log.debug(f"Matched eigenspace of dim {space.dim} with characters {chars}")
    if not components:
        raise TheoremViolation("No common eigenline of A lies on the sampled core; the sample is too shallow.")
    V = Subspace.span([v for c in components for v in c.space.basis.T])
    fixed = [ProjectivePoint(c.space.basis[:, 0]) for c in components if c.space.dim == 1]
    log.info(f"Fixed subspace of dimension {V.dim} with {len(components)} components")
    return CentralizerSubspace(V=V, components=components, core_slice=_slice(body, V, anchors), fixed_points=fixed)


def _kept_spread(logs: np.ndarray, keep: list[int]) -> float:
    return float(logs[keep].max() - logs[keep].min())


def _gap(logs: np.ndarray, keep: list[int], drop: int) -> float:
    return float(logs[keep].min() - logs[drop])


def _exponent_direction(log_chars: np.ndarray, drop: int, radius: int) -> tuple[np.ndarray, float] | None:
    """Shortest exponent vector on which the kept characters agree and dominate the dropped one."""
    keep = [i for i in range(log_chars.shape[1]) if i != drop]
    best: tuple[int, tuple[int, ...]] | None = None
    best_gap = 0.0
    for n in itertools.product(range(-radius, radius + 1), repeat=log_chars.shape[0]):
        if not any(n):
            continue
        logs = np.asarray(n) @ log_chars
        scale = max(1.0, float(np.max(np.abs(logs))))
        gap = _gap(logs, keep, drop)
        if _kept_spread(logs, keep) > 1e-9 * scale or gap <= 1e-9:
            continue
        key = (int(np.sum(np.abs(n))), n)
        if best is None or key < best:
            best, best_gap = key, gap
    if best is None:
        return None
    return np.asarray(best[1]), best_gap


def _bounded_walk(log_chars: np.ndarray, drop: int, radius: int) -> list[np.ndarray]:
    """Exponent steps whose partial sums keep the kept characters within a bounded ratio.

    Each step is taken from the ball |n_i| <= radius and chosen to keep the spread of the kept
    log-characters smallest; the walk stops once the dropped vertex is contracted by TARGET_GAP.

    Raises
    ------
    BudgetError
        If the spread leaves the bound set by the generators before the gap is reached.
    """
    keep = [i for i in range(log_chars.shape[1]) if i != drop]
    bound = 2.0 * max(_kept_spread(row, keep) for row in log_chars)
    candidates = [
        np.asarray(n)
        for n in itertools.product(range(-radius, radius + 1), repeat=log_chars.shape[0])
        if any(n) and _gap(np.asarray(n) @ log_chars, keep, drop) > 1e-9
    ]
    if not candidates:
        raise BudgetError(f"No exponent vector with |n_i| <= {radius} contracts the dropped vertex.")
    total = np.zeros(log_chars.shape[0], dtype=int)
    steps: list[np.ndarray] = []
    while len(steps) < MAX_WALK_STEPS:
        n = min(
            candidates,
            key=lambda c: (_kept_spread((total + c) @ log_chars, keep), -_gap(c @ log_chars, keep, drop)),
        )
        total = total + n
        steps.append(n)
        logs = total @ log_chars
        if _kept_spread(logs, keep) > bound:
            raise BudgetError(
                f"Kept characters drift apart by {_kept_spread(logs, keep):.3g} > {bound:.3g} after {len(steps)} steps."
            )
        if _gap(logs, keep, drop) >= TARGET_GAP:
            log.debug(f"Bounded walk reached exponents {total.tolist()} in {len(steps)} steps")
            return steps
    raise BudgetError(f"Bounded walk did not contract the dropped vertex within {MAX_WALK_STEPS} steps.")


def _product(A: Sequence[ProjectiveMap], n: np.ndarray, dim: int) -> np.ndarray:
    step = np.eye(dim)
    for a, k in zip(A, n):
        step = step @ a.power(int(k)).lift
    return step


def simplex_edge_projection(
    simplex: PolytopeBody,
    A: Sequence[ProjectiveMap],
    drop_vertex: int,
    search_radius: int = 6,
    samples: int = 20,
    seed: int = 0,
) -> EndomorphismClass:
    """Limit T of a sequence in <A> that collapses the simplex onto the face opposite `drop_vertex`.

    Products a_n are taken along a lattice direction on which the characters at the kept vertices agree
    and dominate the character at the dropped vertex. When no lattice direction makes them agree (for
    instance when their logarithms have irrational ratio), a_n follows a walk on which the kept characters
    stay within a bounded ratio; the terms then only have limit points, and T is the one whose kept
    weights are those of the last term.
    """
    vertices = simplex.vertex_points()
    if len(vertices) != simplex.dim_span + 1:
        raise PreconditionError("Body is not a simplex.")
    if not 0 <= drop_vertex < len(vertices):
        raise PreconditionError(f"Vertex index {drop_vertex} out of range.")
    for a in A:
        if any(a(v).angle_to(v) > FIX_TOL for v in vertices):
            raise PreconditionError("Generators must fix every vertex of the simplex.")
    log_chars = np.array([[np.log(abs(v.direction @ a.lift @ v.direction)) for v in vertices] for a in A])
    kept = np.column_stack([v.direction for i, v in enumerate(vertices) if i != drop_vertex])
    exact = _exponent_direction(log_chars, drop_vertex, search_radius)
    if exact is not None:
        direction, gap = exact
        count = int(np.ceil(TARGET_GAP / gap)) + 5
        steps = [direction] * count
    else:
        steps = _bounded_walk(log_chars, drop_vertex, search_radius)
    terms, cur = [], np.eye(simplex.dim)
    for n in steps:
        cur = _product(A, n, simplex.dim) @ cur
        cur = cur / np.linalg.norm(cur, 2)
        terms.append(cur.copy())
    if exact is not None:
        T = sequence_limit(terms)
        if T is None:
            raise BudgetError("Product sequence did not settle.")
    else:
        if np.linalg.norm(cur @ vertices[drop_vertex].direction) > 1e-8:
            raise BudgetError("The walk did not contract the dropped vertex.")
        basis = np.column_stack([v.direction for v in vertices])
        mask = np.ones(len(vertices))
        mask[drop_vertex] = 0.0
        T = EndomorphismClass.from_matrix(cur @ basis @ np.diag(mask) @ np.linalg.inv(basis))

    if np.linalg.norm(T.rep @ vertices[drop_vertex].direction) > 1e-8:
        raise TheoremViolation("The dropped vertex is not in the kernel of the limit.")
    rng = np.random.default_rng(seed)
    for x in simplex.random_interior(rng, samples):
        y = apply_endo(T, ProjectivePoint(x)).direction
        coeffs, *_ = np.linalg.lstsq(kept, y, rcond=None)
        residual = np.linalg.norm(kept @ coeffs - y)
        same_sign = np.all(coeffs > 1e-9 * np.abs(coeffs).max()) or np.all(coeffs < -1e-9 * np.abs(coeffs).max())
        if residual > 1e-8 or not same_sign:
            raise TheoremViolation("The limit does not map the simplex onto the open opposite face.")
    log.info(f"Edge projection after {len(steps)} products")
    return T
