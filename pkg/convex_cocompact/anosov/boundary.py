"""Sampled boundary maps, transversality, bounded charts and invariant domains."""
from __future__ import annotations

from typing import Sequence

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from convex_cocompact.domain import AffineChart, ConvexBody, PolytopeBody, hausdorff_distance, sphere_directions
from convex_cocompact.errors import (
    AmbiguousClassificationError,
    ChartError,
    InstabilityDiagnostic,
    NoChartDiagnostic,
    PreconditionError,
)
from convex_cocompact.group import MatrixGroup
from convex_cocompact.projlin import (
    ProjectivePoint,
    Subspace,
    canonical_sign,
    classify_proximal,
    hyperplane,
    hyperplane_normal,
)

log = logging.getLogger(__name__)

CHART_MARGIN = 1e-4
PAIR_TOL = 1e-2


@dataclass
class BoundaryMapSample:
    """Attracting lines g+ and hyperplanes H_g+ of the biproximal elements of a word ball.

    `lines` and `normals` are (n, d) arrays of unit vectors; row i of `normals` annihilates the hyperplane
    attached to the line in row i.
    """

    lines: np.ndarray
    normals: np.ndarray
    words: list[tuple[str, ...]] = field(default_factory=list)
    diagnostic: str | None = None

    def __len__(self) -> int:
        return int(self.lines.shape[0])

    @property
    def points(self) -> list[ProjectivePoint]:
        return [ProjectivePoint(v) for v in self.lines]

    @property
    def hyperplanes(self) -> list[Subspace]:
        return [hyperplane(n) for n in self.normals]


def boundary_map_sample(group: MatrixGroup, L: int, cluster_tol: float = 1e-6) -> BoundaryMapSample:
    """Sample the boundary maps at the attracting points of biproximal elements of ball(L).

    Elements whose classification is ambiguous are skipped; lines closer than `cluster_tol` in angle to
    an earlier line are merged into it.
    """
    lines, normals, words = [], [], []
    for element in group.enumerate_ball(L):
        try:
            data = classify_proximal(element.map)
        except AmbiguousClassificationError:
            continue
        if not data.is_biproximal:
            continue
        line = canonical_sign(data.attracting.direction)
        if lines and np.min(np.arccos(np.clip(np.abs(np.array(lines) @ line), 0.0, 1.0))) < cluster_tol:
            continue
        lines.append(line)
        normals.append(hyperplane_normal(data.attracting_hyperplane))
        words.append(element.word)
    d = group.dim
    if not lines:
        message = f"No biproximal element in ball({L}); the boundary maps cannot be sampled."
        log.warning(message)
        return BoundaryMapSample(np.zeros((0, d)), np.zeros((0, d)), [], diagnostic=message)
    log.info(f"Boundary map sample of {len(lines)} lines from ball({L})")
    return BoundaryMapSample(np.array(lines), np.array(normals), words)


@dataclass
class TransversalityReport:
    min_angle: float
    pairs: int
    worst_pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.pairs > 0 and self.min_angle > 0


def transversality_check(sample: BoundaryMapSample, pair_tol: float = PAIR_TOL) -> TransversalityReport:
    """Smallest angle between a sampled line and the hyperplane of another sampled point.

    Only pairs whose lines are more than `pair_tol` apart in angle count as distinct.
    """
    cos = np.clip(np.abs(sample.lines @ sample.lines.T), 0.0, 1.0)
    distinct = np.arccos(cos) > pair_tol
    if not np.any(distinct):
        return TransversalityReport(min_angle=float("inf"), pairs=0)
    # angle between line x_i and the hyperplane with normal n_j
    angles = np.arcsin(np.clip(np.abs(sample.lines @ sample.normals.T), 0.0, 1.0))
    masked = np.where(distinct, angles, np.inf)
    i, j = np.unravel_index(int(np.argmin(masked)), masked.shape)
    return TransversalityReport(min_angle=float(masked[i, j]), pairs=int(distinct.sum()), worst_pair=(int(i), int(j)))


@dataclass
class ChartReport:
    chart: AffineChart
    margin: float


def _margin(lines: np.ndarray, b: np.ndarray) -> float:
    return float(np.min(np.abs(lines @ b)) / np.linalg.norm(b))


def _polish(lines: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Maximize min s_i <x_i, b> over the box |b_j| <= 1 with the signs s_i of the starting covector."""
    signs = np.sign(lines @ b)
    signs[signs == 0] = 1.0
    d = lines.shape[1]
    # variables (b, t): minimize -t subject to t - s_i <x_i, b> <= 0
    A = np.hstack([-signs[:, None] * lines, np.ones((len(lines), 1))])
    res = linprog(
        c=np.r_[np.zeros(d), -1.0],
        A_ub=A,
        b_ub=np.zeros(len(lines)),
        bounds=[(-1.0, 1.0)] * d + [(None, None)],
        method="highs",
    )
    if not res.success:
        return None
    return res.x[:d]


def chart_boundedness(sample: BoundaryMapSample, n_random: int = 10_000, seed: int = 0) -> ChartReport:
    """Search a covector b keeping every sampled line away from the hyperplane at infinity.

    Candidates are the principal direction of the sample, its sign-aligned mean, the sampled hyperplane
    normals and `n_random` random directions; the best one is polished by a linear program.

    Raises
    ------
    PreconditionError
        If the sample is empty.
    NoChartDiagnostic
        If the best margin min |<b, x>| stays below 1e-4.
    """
    if len(sample) == 0:
        raise PreconditionError("Cannot search a chart for an empty sample.")
    lines = sample.lines
    top = np.linalg.svd(lines, full_matrices=False)[2][0]
    aligned = lines * np.sign(lines @ top + (lines @ top == 0))[:, None]
    rng = np.random.default_rng(seed)
    candidates = np.vstack([top, aligned.mean(axis=0), sample.normals, rng.standard_normal((n_random, lines.shape[1]))])
    norms = np.linalg.norm(candidates, axis=1)
    candidates = candidates[norms > 1e-12] / norms[norms > 1e-12, None]
    scores = np.min(np.abs(lines @ candidates.T), axis=0)
    best = candidates[int(np.argmax(scores))]
    polished = _polish(lines, best)
    if polished is not None and np.linalg.norm(polished) > 1e-12 and _margin(lines, polished) > _margin(lines, best):
        best = polished / np.linalg.norm(polished)
    margin = _margin(lines, best)
    if margin < CHART_MARGIN:
        raise NoChartDiagnostic(f"Best chart margin {margin:.3g} is below {CHART_MARGIN}.")
    log.info(f"Chart found with margin {margin:.4g}")
    return ChartReport(AffineChart(best), margin)


def _inner_radius(body: ConvexBody, x: np.ndarray, n_directions: int = 360) -> float:
    frame = body.chart.frame
    directions = sphere_directions(frame.shape[1], n_directions) @ frame.T
    return float(min(body.support(u) - u @ x for u in directions))


def invariant_domain_from_limit(
    group: MatrixGroup,
    sample: BoundaryMapSample,
    p: ProjectivePoint,
    r: float | None = None,
    L: int = 10,
    chart: AffineChart | None = None,
    n_ball: int = 32,
    escape_tol: float = 0.5,
) -> PolytopeBody:
    """Hull of the sampled lines and of the ball(L)-orbit of a small chart ball around p.

    Parameters
    ----------
    group : MatrixGroup
        The group.
    sample : BoundaryMapSample
        Sampled boundary lines, bounded in `chart`.
    p : ProjectivePoint
        A point inside the hull of the sample.
    r : float | None, optional
        Chart radius of the ball around p, by default half the chart distance from p to the hull boundary.
    L : int, optional
        Word length of the orbit, by default 10.
    chart : AffineChart | None, optional
        Chart for the hull, by default the one found by `chart_boundedness`.
    n_ball : int, optional
        Number of boundary points of the ball, by default 32.
    escape_tol : float, optional
        Largest chart offset of the orbit outside the hull of the sample, by default 0.5.

    Raises
    ------
    InstabilityDiagnostic
        If the orbit leaves the chart or escapes the hull of the sample by more than `escape_tol`.
    """
    chart = chart if chart is not None else chart_boundedness(sample).chart
    core = PolytopeBody(chart, chart.lift_many(sample.lines))
    x = chart.lift(p)
    if not core.contains_vector(x, "open"):
        raise PreconditionError(f"{p} is not inside the hull of the sample.")
    r = r if r is not None else 0.5 * _inner_radius(core, x)
    if r <= 0:
        raise PreconditionError("Ball radius must be positive.")
    ball = x[None, :] + r * sphere_directions(chart.dim - 1, n_ball) @ chart.frame.T
    orbit = np.einsum("nij,mj->nmi", group.ball_matrices(L), ball).reshape(-1, chart.dim)
    pairing = orbit @ chart.covector
    if np.any(pairing <= 1e-12):
        raise InstabilityDiagnostic("The orbit of the ball leaves the chart.")
    hull = PolytopeBody(chart, np.vstack([core.vertices, orbit / pairing[:, None]]))
    escape = max(core.boundary_offset(v) for v in hull.vertices)
    if escape > escape_tol:
        raise InstabilityDiagnostic(f"The orbit escapes the hull of the limit sample by {escape:.3g}.")
    log.info(f"Invariant domain with {len(hull.vertices)} vertices, orbit escape {escape:.3g}")
    return hull


def generator_drift(group: MatrixGroup, body: ConvexBody) -> float:
    """Largest chart Hausdorff distance between g(body) and body over the generators and their inverses."""
    drift = 0.0
    for g in group.generators:
        for h in (g, g.inverse()):
            try:
                drift = max(drift, hausdorff_distance(body, body.transform(h)))
            except ChartError:
                return float("inf")
    return drift


def hyperplane_separation(
    sample: BoundaryMapSample, body: ConvexBody, samples: int = 200, seed: int = 0
) -> float:
    """Smallest chart distance from sampled interior points of the body to the sampled hyperplanes."""
    rng = np.random.default_rng(seed)
    interior = body.random_interior(rng, samples)
    b = body.chart.covector
    tangential = np.linalg.norm(sample.normals - np.outer(sample.normals @ b, b), axis=1)
    reach = np.abs(sample.normals @ interior.T)
    with np.errstate(divide="ignore"):
        distances = reach / tangential[:, None]
    return float(distances.min()) if distances.size else float("inf")


@dataclass
class CollinearityScan:
    """Triples of well separated points whose spans are numerically 2-dimensional."""

    points: np.ndarray
    triples: np.ndarray
    min_ratio: float

    def __len__(self) -> int:
        return int(self.triples.shape[0])


def collinear_triples(
    points: np.ndarray | Sequence[ProjectivePoint],
    tol: float = 1e-6,
    max_points: int = 120,
    min_separation: float = 1e-2,
) -> CollinearityScan:
    """Scan for collinear triples, flagging sigma_3 / sigma_2 <= tol.

    Points are first thinned greedily to at most `max_points` pairwise separated by `min_separation`
    in angle.
    """
    arr = np.array([p.direction for p in points]) if not isinstance(points, np.ndarray) else points
    arr = arr / np.linalg.norm(arr, axis=1, keepdims=True)
    kept: list[int] = []
    for i, v in enumerate(arr):
        if len(kept) >= max_points:
            break
        if not kept or np.min(np.arccos(np.clip(np.abs(arr[kept] @ v), 0.0, 1.0))) >= min_separation:
            kept.append(i)
    thinned = arr[kept]
    if len(thinned) < 3:
        return CollinearityScan(thinned, np.zeros((0, 3), dtype=int), float("inf"))
    index = np.array(list(itertools.combinations(range(len(thinned)), 3)))
    sv = np.linalg.svd(thinned[index], compute_uv=False)
    ratio = sv[:, 2] / sv[:, 1]
    hits = index[ratio <= tol]
    log.debug(f"Collinearity scan over {len(index)} triples: {len(hits)} hits")
    return CollinearityScan(thinned, hits, float(ratio.min()))
