"""Unit tangent vectors of a Hilbert geometry, encoded by their endpoints.

A unit tangent vector v is stored as the ordered pair (backward, forward) of boundary points together
with an offset o: with chart vectors a, b of the endpoints its base point is [e^-o a + e^o b]. The
cross ratio of (a, [e^-o1 a + e^o1 b], [e^-o2 a + e^o2 b], b) equals e^(2 (o2 - o1)), so the geodesic
flow is exactly o -> o + t.
"""
from __future__ import annotations

from typing import Union

from dataclasses import dataclass, replace

import numpy as np
from scipy.special import expit

from convex_cocompact.domain import AffineChart, ConvexBody, chart_distance
from convex_cocompact.errors import ChartError, DegenerateLineError, FlowRangeError, PreconditionError
from convex_cocompact.projlin import ProjectiveMap, ProjectivePoint

COLLAR = 1e-12
OFFSET_LIMIT = 0.5 * float(np.log((1.0 - COLLAR) / COLLAR))
ENDPOINT_TOL = 1e-8

MapLike = Union[ProjectiveMap, np.ndarray]


@dataclass(frozen=True)
class UnitTangent:
    chart: AffineChart
    backward: ProjectivePoint
    forward: ProjectivePoint
    offset: float = 0.0

    def endpoint_vectors(self) -> tuple[np.ndarray, np.ndarray]:
        return self.chart.lift(self.backward), self.chart.lift(self.forward)

    def base_vector(self) -> np.ndarray:
        """Chart vector (1 - s) a + s b with s = 1 / (1 + e^(-2o))."""
        a, b = self.endpoint_vectors()
        return expit(-2.0 * self.offset) * a + expit(2.0 * self.offset) * b

    @property
    def base(self) -> ProjectivePoint:
        return ProjectivePoint(self.base_vector())

    def shifted(self, t: float) -> UnitTangent:
        """Flow by t without any range check."""
        return replace(self, offset=self.offset + t)

    def in_chart(self, chart: AffineChart) -> UnitTangent:
        return transform(np.eye(self.chart.dim), self, chart)

    @classmethod
    def from_endpoints(
        cls, body: ConvexBody, backward: ProjectivePoint, forward: ProjectivePoint, offset: float = 0.0
    ) -> UnitTangent:
        """Tangent along (backward, forward), both required on the boundary of the body."""
        if backward == forward:
            raise DegenerateLineError("Endpoints of a unit tangent vector must differ.")
        for name, p in (("backward", backward), ("forward", forward)):
            if abs(body.boundary_offset(body.chart.lift(p))) > ENDPOINT_TOL:
                raise PreconditionError(f"The {name} endpoint {p} is not on the boundary.")
        v = cls(body.chart, backward, forward, offset)
        if not body.contains_vector(v.base_vector(), "open"):
            raise PreconditionError("The open segment between the endpoints leaves the domain.")
        return v

    @classmethod
    def through(cls, body: ConvexBody, base: ProjectivePoint, toward: ProjectivePoint) -> UnitTangent:
        """Tangent at the interior point `base` pointing at `toward`."""
        x = body.chart.lift(base)
        if not body.contains_vector(x, "open"):
            raise PreconditionError(f"Base point {base} is not an interior point.")
        u = body.chart.lift(toward) - x
        if np.linalg.norm(u) <= 1e-15:
            raise DegenerateLineError("Base point and direction point coincide.")
        lo, hi = body.chord(x, u)
        offset = 0.5 * (np.log(-lo) - np.log(hi))
        return cls(body.chart, ProjectivePoint(x + lo * u), ProjectivePoint(x + hi * u), float(offset))


def flow(body: ConvexBody, v: UnitTangent, t: float) -> UnitTangent:
    """Geodesic flow phi_t(v).

    Raises
    ------
    FlowRangeError
        If the base point would come within 1e-12 of the boundary in chart parameter; the error carries
        the largest admissible flow time in the requested direction.
    """
    if not v.chart.same_as(body.chart):
        v = v.in_chart(body.chart)
    target = v.offset + t
    if abs(target) > OFFSET_LIMIT:
        achieved = float(np.copysign(OFFSET_LIMIT, target) - v.offset)
        raise FlowRangeError(f"Flow time {t} leaves the numerical collar; reached {achieved:.6g}.", achieved)
    return v.shifted(t)


def transform(g: MapLike, v: UnitTangent, chart: AffineChart | None = None) -> UnitTangent:
    """Image g.v of a unit tangent vector, expressed in `chart` (default: the chart of v)."""
    mat = g.lift if isinstance(g, ProjectiveMap) else np.asarray(g, dtype=float)
    chart = chart if chart is not None else v.chart
    a, b = v.endpoint_vectors()
    ga, gb = mat @ a, mat @ b
    alpha, beta = chart.covector @ ga, chart.covector @ gb
    if alpha * beta <= 0:
        raise ChartError("The image geodesic is not contained in the chart.")
    offset = v.offset + 0.5 * float(np.log(beta / alpha))
    return UnitTangent(chart, ProjectivePoint(ga), ProjectivePoint(gb), offset)


def tangent_distance(body: ConvexBody, v: UnitTangent, w: UnitTangent) -> float:
    """Hilbert distance between base points, exact when both vectors lie on the same oriented geodesic."""
    if not v.chart.same_as(body.chart):
        v = v.in_chart(body.chart)
    if not w.chart.same_as(body.chart):
        w = w.in_chart(body.chart)
    if v.backward == w.backward and v.forward == w.forward:
        return abs(v.offset - w.offset)
    return chart_distance(body, v.base_vector(), w.base_vector())


@dataclass(frozen=True)
class EndpointBox:
    """Open set of unit tangent vectors with endpoints near given centers and base near the center geodesic.

    `radius` is an angular radius for both endpoints, `base_radius` a Hilbert radius around the base
    point of the center vector.
    """

    backward: ProjectivePoint
    forward: ProjectivePoint
    radius: float = 0.05
    base_radius: float = 1.0

    def center(self, body: ConvexBody) -> UnitTangent:
        return UnitTangent.from_endpoints(body, self.backward, self.forward)

    def endpoints_match(self, v: UnitTangent) -> bool:
        return v.backward.angle_to(self.backward) < self.radius and v.forward.angle_to(self.forward) < self.radius

    def contains(self, body: ConvexBody, v: UnitTangent) -> bool:
        if not self.endpoints_match(v):
            return False
        return tangent_distance(body, v, self.center(body)) < self.base_radius

    def same_as(self, other: EndpointBox) -> bool:
        return (
            self.backward == other.backward
            and self.forward == other.forward
            and self.radius == other.radius
            and self.base_radius == other.base_radius
        )
