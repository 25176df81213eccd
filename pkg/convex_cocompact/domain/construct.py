"""Constructors for simplices, cones and hulls of points."""
from __future__ import annotations

from typing import Sequence

import logging

import numpy as np

from convex_cocompact.domain.body import ConeBody, ConvexBody, EllipsoidBody, PolytopeBody, _relift
from convex_cocompact.domain.chart import AffineChart
from convex_cocompact.errors import ChartError, DegeneracyError, PreconditionError
from convex_cocompact.projlin import ProjectivePoint

log = logging.getLogger(__name__)

SIMPLEX_TOL = 1e-8
HULL_MARGIN = 1e-6


def make_simplex(vertices: Sequence[ProjectivePoint], chart: AffineChart | None = None) -> PolytopeBody:
    """Open simplex spanned by k + 1 linearly independent points.

    Without a chart, the least-norm covector with <b, v_i> = 1 for every unit lift v_i is used.
    """
    if len(vertices) == 0:
        raise PreconditionError("A simplex needs at least one vertex.")
    V = np.column_stack([v.direction for v in vertices])
    s = np.linalg.svd(V, compute_uv=False)
    if V.shape[1] > V.shape[0] or s[-1] < SIMPLEX_TOL:
        raise DegeneracyError("Simplex vertices are linearly dependent.")
    if chart is None:
        b = np.linalg.lstsq(V.T, np.ones(V.shape[1]), rcond=None)[0]
        chart = AffineChart(b)
    return PolytopeBody(chart, _relift(chart, V.T))


def cone_over_base(v: ProjectivePoint, base: ConvexBody) -> ConvexBody:
    """Cone C_v(B): union of the open segments from v to points of B.

    The chart is tilted so that it still contains B and additionally v.
    """
    span = base.linear_span()
    if span.contains(v.direction, tol=1e-8):
        raise DegeneracyError("Cone vertex lies in the linear span of the base.")
    vdir = v.direction
    v_perp = vdir - span.projector() @ vdir
    b0 = base.chart.covector
    b1 = b0 - (b0 @ vdir - 1.0) * v_perp / (v_perp @ vdir)
    scale = float(np.linalg.norm(b1))
    chart = AffineChart(b1)
    apex = chart.lift(vdir)
    if isinstance(base, PolytopeBody):
        return PolytopeBody(chart, np.vstack([base.vertices * scale, apex]))
    if isinstance(base, EllipsoidBody):
        return ConeBody(chart, apex, EllipsoidBody(chart, base.center * scale, base.axes * scale))
    raise PreconditionError(f"Cones over {type(base).__name__} are not supported.")


def convex_hull_connected(points: Sequence[ProjectivePoint], charts: Sequence[AffineChart]) -> PolytopeBody:
    """Convex hull of X in the first candidate chart containing all of X.

    If several candidate charts contain X but split it differently, the hull depends on the chart
    and a warning is logged.
    """
    if len(points) == 0:
        raise PreconditionError("Cannot take the hull of an empty set.")
    arr = np.array([p.direction for p in points])
    containing = [c for c in charts if np.all(np.abs(arr @ c.covector) >= HULL_MARGIN)]
    if not containing:
        raise ChartError("No candidate chart contains the point set.")
    first = containing[0]
    reference = np.sign(arr @ first.covector)
    for other in containing[1:]:
        signs = np.sign(arr @ other.covector)
        if not (np.all(signs == reference) or np.all(signs == -reference)):
            log.warning("Convex hull depends on the chart: the point set is probably not connected.")
            break
    return PolytopeBody(first, first.lift_many(arr))


def ellipsoid_from_form(form: np.ndarray, chart: AffineChart | None = None) -> EllipsoidBody:
    """Ellipsoid {x^T S x < 0} for a symmetric S of signature (d - 1, 1)."""
    S = np.asarray(form, dtype=float)
    if chart is None:
        evals, evecs = np.linalg.eigh(0.5 * (S + S.T))
        negative = evals < 0
        if np.sum(negative) != 1:
            raise DegeneracyError("Form does not have signature (d - 1, 1).")
        chart = AffineChart(evecs[:, int(np.argmax(negative))])
    return EllipsoidBody.from_form(S, chart)


def unit_ball(dim: int) -> EllipsoidBody:
    """Round ball {x_1^2 + ... + x_{d-1}^2 < x_d^2} in the standard chart."""
    chart = AffineChart.standard(dim)
    axes = np.eye(dim)[:, : dim - 1]
    return EllipsoidBody(chart, chart.covector, axes)
