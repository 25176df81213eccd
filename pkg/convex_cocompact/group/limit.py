"""Orbital limit sets, convex cores and orbit-density heuristics."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from convex_cocompact.domain import ConvexBody, PolytopeBody, chart_distance, convex_hull_connected
from convex_cocompact.errors import PreconditionError
from convex_cocompact.group.ball import GroupElement, MatrixGroup
from convex_cocompact.projlin import ProjectivePoint

log = logging.getLogger(__name__)

DEPTH_THRESHOLD = 5.0
CLUSTER_TOL = 1e-3
NEIGHBOURS = 16


@dataclass
class LimitSetSample:
    """Boundary points of a limit set with the orbit element that produced each of them."""

    points: list[ProjectivePoint]
    witnesses: list[GroupElement]
    base_point: ProjectivePoint
    radius: int
    diagnostic: str | None = None
    vectors: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)), repr=False)

    def __len__(self) -> int:
        return len(self.points)


def orbit_vectors(group: MatrixGroup, body: ConvexBody, point: ProjectivePoint, radius: int) -> np.ndarray:
    """Chart vectors of g x for all g in the ball, in enumeration order."""
    mats = group.ball_matrices(radius)
    return body.chart.lift_many(mats @ point.direction)


def _greedy_cluster(vectors: np.ndarray, tol: float) -> list[int]:
    kept: list[int] = []
    for i, v in enumerate(vectors):
        if not kept or np.min(np.linalg.norm(vectors[kept] - v, axis=1)) >= tol:
            kept.append(i)
    return kept


def orbital_limit_set(
    group: MatrixGroup,
    body: ConvexBody,
    base_point: ProjectivePoint,
    radius: int,
    cluster_tol: float = CLUSTER_TOL,
    depth: float = DEPTH_THRESHOLD,
) -> LimitSetSample:
    """Sample of the orbital limit set from the orbit of `base_point` over ball(radius).

    Orbit points at Hilbert distance at least `depth` from the base point are pushed radially from the
    base point onto the boundary, then clustered greedily in enumeration order at `cluster_tol` chart
    distance. The sample at radius L is therefore contained in the sample at radius L + 1.
    """
    p = body.chart.lift(base_point)
    if not body.contains_vector(p, "open"):
        raise PreconditionError("Base point must be an interior point of the domain.")
    elements = group.enumerate_ball(radius)
    orbit = orbit_vectors(group, body, base_point, radius)
    boundary, witnesses = [], []
    for element, q in zip(elements, orbit):
        u = q - p
        if np.linalg.norm(u) <= 1e-15:
            continue
        interval = body.chord(p, u)
        if interval is None or not np.isfinite(interval[1]):
            continue
        lo, hi = interval
        if hi > 1.0 and 0.5 * (np.log1p(1.0 / (hi - 1.0)) + np.log1p(1.0 / (-lo))) < depth:
            continue
        boundary.append(p + hi * u)
        witnesses.append(element)
    if not boundary:
        message = f"Orbit stays within Hilbert distance {depth} of the base point up to word length {radius}."
        log.warning(message)
        return LimitSetSample([], [], base_point, radius, diagnostic=message, vectors=np.zeros((0, body.dim)))
    vectors = np.array(boundary)
    kept = _greedy_cluster(vectors, cluster_tol)
    log.info(f"Limit set sample at radius {radius}: {len(kept)} clusters from {len(boundary)} deep orbit points")
    return LimitSetSample(
        points=[ProjectivePoint(vectors[i]) for i in kept],
        witnesses=[witnesses[i] for i in kept],
        base_point=base_point,
        radius=radius,
        vectors=vectors[kept],
    )


def convex_core_approx(
    group: MatrixGroup,
    body: ConvexBody,
    radius: int,
    base_point: ProjectivePoint | None = None,
    cluster_tol: float = CLUSTER_TOL,
    depth: float = DEPTH_THRESHOLD,
) -> PolytopeBody:
    """Hull of the sampled limit set, taken in the chart of the domain."""
    base_point = base_point if base_point is not None else body.interior_point()
    sample = orbital_limit_set(group, body, base_point, radius, cluster_tol, depth)
    if len(sample) == 0:
        raise PreconditionError(f"Empty limit set sample: {sample.diagnostic}")
    return convex_hull_connected(sample.points, [body.chart])


def cocompactness_radius(
    group: MatrixGroup,
    body: ConvexBody,
    core: ConvexBody,
    base_point: ProjectivePoint,
    radius: int,
    samples: int = 64,
    shrink: float = 0.95,
    seed: int = 0,
) -> float:
    """Heuristic covering radius of the orbit of `base_point` over sampled core points.

    For every sampled core point the Hilbert distance to the `NEIGHBOURS` nearest orbit points (in the
    chart) is evaluated; the radius is the largest of these minima. This is a proxy, not a certificate.
    """
    orbit = orbit_vectors(group, body, base_point, radius)
    rng = np.random.default_rng(seed)
    points = body.chart.lift_many(core.random_interior(rng, samples, shrink=shrink))
    worst = 0.0
    for x in points:
        near = np.argsort(np.linalg.norm(orbit - x, axis=1))[:NEIGHBOURS]
        worst = max(worst, min(chart_distance(body, x, orbit[i]) for i in near))
    return float(worst)


def boundary_orbit_density(
    group: MatrixGroup,
    body: ConvexBody,
    core: ConvexBody,
    x0: ProjectivePoint,
    radius: int,
    samples: int = 256,
    tol: float = 1e-6,
) -> float:
    """Directed chart Hausdorff distance from a boundary sample of the core to the orbit of x0."""
    if abs(core.boundary_offset(core.chart.lift(x0))) > tol:
        raise PreconditionError(f"{x0} is not on the boundary of the core.")
    orbit = body.chart.lift_many(group.ball_matrices(radius) @ x0.direction)
    targets = body.chart.lift_many(core.boundary_sample(samples))
    gaps = np.linalg.norm(targets[:, None, :] - orbit[None, :, :], axis=2).min(axis=1)
    return float(gaps.max())
