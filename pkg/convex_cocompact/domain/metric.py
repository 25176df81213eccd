"""Hilbert metric, geodesics and faces of properly convex bodies."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from convex_cocompact.domain.body import (
    MEMBERSHIP_TOL,
    ConvexBody,
    FaceDescriptor,
    FaceKind,
    sphere_directions,
)
from convex_cocompact.domain.chart import AffineChart
from convex_cocompact.errors import ChartError, DegenerateLineError, NotAutomorphismError, PreconditionError
from convex_cocompact.projlin import ProjectiveMap, ProjectivePoint

BOUNDARY_TOL = 1e-8
EMBEDDING_TOL = 1e-7


def contains(body: ConvexBody, x: ProjectivePoint, mode: str = "open") -> bool:
    """Membership of x in the body (`open`) or its closure (`closed`) at tolerance 1e-9."""
    return body.contains_vector(body.chart.lift(x), mode)


def chart_chord(body: ConvexBody, x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Chord parameters (lo, hi) of the line x + t (y - x) through the body."""
    u = y - x
    if np.linalg.norm(u) <= 1e-15:
        raise DegenerateLineError("Cannot draw a line through a single point.")
    interval = body.chord(x, u)
    if interval is None:
        raise PreconditionError("The line through the given points misses the body.")
    return interval


def chart_distance(body: ConvexBody, x: np.ndarray, y: np.ndarray) -> float:
    """Hilbert distance between two chart vectors, without membership checks.

    With x at t = 0, y at t = 1 and chord endpoints at lo < 0 < 1 < hi the cross ratio is
    hi (1 - lo) / ((-lo)(hi - 1)).
    """
    if np.linalg.norm(y - x) == 0:
        return 0.0
    lo, hi = chart_chord(body, x, y)
    if not (lo < 0.0 and hi > 1.0):
        raise PreconditionError("Points are not in the interior of the body.")
    return float(0.5 * (np.log1p(1.0 / (hi - 1.0)) + np.log1p(1.0 / (-lo))))


def distance_parameter(lo: float, hi: float, t: float) -> float:
    """Chord parameter at signed Hilbert distance t from the point at parameter 0."""
    if t < 0:
        return -distance_parameter(-hi, -lo, -t)
    decay = np.exp(-2.0 * t)
    return float(hi * (-lo) * (-np.expm1(-2.0 * t)) / (hi * decay - lo))


def cross_ratio(
    chart: AffineChart, a: ProjectivePoint, x: ProjectivePoint, y: ProjectivePoint, b: ProjectivePoint
) -> float:
    """[a, x, y, b] = |x - b| |y - a| / (|x - a| |y - b|) for collinear points in a chart."""
    av, xv, yv, bv = (chart.lift(p) for p in (a, x, y, b))
    return float(
        np.linalg.norm(xv - bv) * np.linalg.norm(yv - av) / (np.linalg.norm(xv - av) * np.linalg.norm(yv - bv))
    )


def _interior_vector(body: ConvexBody, x: ProjectivePoint, name: str) -> np.ndarray:
    v = body.chart.lift(x)
    if not body.contains_vector(v, "open"):
        raise PreconditionError(f"{name} = {x} is not an interior point.")
    return v


def line_boundary_points(
    body: ConvexBody, x: ProjectivePoint, y: ProjectivePoint
) -> tuple[ProjectivePoint, ProjectivePoint]:
    """Endpoints a, b of the chord through x and y, ordered a, x, y, b.

    Raises
    ------
    DegenerateLineError
        If x and y coincide.
    PreconditionError
        If x or y is not an interior point.
    """
    if x == y:
        raise DegenerateLineError("x and y coincide.")
    xv = _interior_vector(body, x, "x")
    yv = _interior_vector(body, y, "y")
    lo, hi = chart_chord(body, xv, yv)
    u = yv - xv
    return ProjectivePoint(xv + lo * u), ProjectivePoint(xv + hi * u)


def hilbert_distance(body: ConvexBody, x: ProjectivePoint, y: ProjectivePoint) -> float:
    """d_Omega(x, y) = 1/2 log [a, x, y, b]."""
    xv = _interior_vector(body, x, "x")
    yv = _interior_vector(body, y, "y")
    if x == y:
        return 0.0
    return chart_distance(body, xv, yv)


def geodesic_point(body: ConvexBody, x: ProjectivePoint, eta: ProjectivePoint, t: float) -> ProjectivePoint:
    """The point at Hilbert distance t from x on the segment [x, eta), eta a boundary point."""
    if t < 0:
        raise PreconditionError("geodesic_point expects t >= 0.")
    xv = _interior_vector(body, x, "x")
    ev = body.chart.lift(eta)
    if abs(body.boundary_offset(ev)) > BOUNDARY_TOL:
        raise PreconditionError(f"eta = {eta} is not on the boundary.")
    lo, hi = chart_chord(body, xv, ev)
    return ProjectivePoint(xv + distance_parameter(lo, hi, t) * (ev - xv))


def open_face(body: ConvexBody, x: ProjectivePoint) -> FaceDescriptor:
    """Open face F_Omega(x) of a point in the closure."""
    xv = body.chart.lift(x)
    offset = body.boundary_offset(xv)
    if offset > MEMBERSHIP_TOL:
        raise PreconditionError(f"{x} is outside the closure of the body.")
    if offset < -MEMBERSHIP_TOL:
        return FaceDescriptor(FaceKind.INTERIOR, body.linear_span(), x)
    return body.face(xv)


@dataclass(frozen=True)
class EmbeddingCheck:
    """Outcome of `is_properly_embedded` with the sampling confidence."""

    embedded: bool
    samples: int
    max_offset: float

    def __bool__(self) -> bool:
        return self.embedded


def is_properly_embedded(inner: ConvexBody, outer: ConvexBody, samples: int = 256) -> EmbeddingCheck:
    """Sampled test of the ideal boundary of `inner` lying in the boundary of `outer`."""
    if not outer.contains_vector(outer.chart.lift(inner.interior_point()), "open"):
        raise PreconditionError("The inner body is not contained in the outer one.")
    points = outer.chart.lift_many(inner.boundary_sample(samples))
    offsets = np.array([outer.boundary_offset(p) for p in points])
    worst = float(np.max(np.abs(offsets)))
    return EmbeddingCheck(embedded=bool(worst <= EMBEDDING_TOL), samples=len(points), max_offset=worst)


def hausdorff_distance(first: ConvexBody, second: ConvexBody, n_directions: int = 720) -> float:
    """Chart Hausdorff distance of two convex bodies via their support functions."""
    if not second.chart.same_as(first.chart):
        second = second.in_chart(first.chart)
    frame = first.chart.frame
    directions = sphere_directions(frame.shape[1], n_directions) @ frame.T
    return float(max(abs(first.support(u) - second.support(u)) for u in directions))


def invariance_drift(g: ProjectiveMap, body: ConvexBody, samples: int = 64) -> float:
    """Largest boundary offset of g applied to sampled boundary points of the body."""
    try:
        images = body.chart.lift_many(g.apply(body.boundary_sample(samples)))
        center = body.chart.lift(g(body.interior_point()))
    except ChartError:
        return float("inf")
    if not body.contains_vector(center, "open"):
        return float("inf")
    return float(max(abs(body.boundary_offset(p)) for p in images))


def check_automorphism(g: ProjectiveMap, body: ConvexBody, samples: int = 64, tol: float = EMBEDDING_TOL) -> None:
    """Sampled check that g preserves the body.

    Raises
    ------
    NotAutomorphismError
        If some sampled boundary point is moved off the boundary by more than `tol`.
    """
    drift = invariance_drift(g, body, samples)
    if drift > tol:
        raise NotAutomorphismError(f"Map moves the boundary by {drift:.3g} > {tol}.")
