"""Minimal translation sets and rank-one automorphisms."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from convex_cocompact.domain import ConvexBody, chart_distance, check_automorphism
from convex_cocompact.errors import AmbiguousClassificationError, BudgetError, ChartError, PreconditionError
from convex_cocompact.group.ball import MatrixGroup
from convex_cocompact.group.limit import orbit_vectors
from convex_cocompact.projlin import ProjectiveMap, ProjectivePoint, ProximalData, classify_proximal, translation_length

log = logging.getLogger(__name__)

AXIS_SAMPLES = 11
MAX_CANDIDATES = 50
SEGMENT_SAMPLES = 9


@dataclass
class TranslationSample:
    """Grid minimum of x -> d(x, gx) and the grid points within `slack` of it."""

    tau: float
    argmin: list[ProjectivePoint]
    values: np.ndarray
    lower_bound: float


def minimal_translation_sample(
    g: ProjectiveMap, body: ConvexBody, grid: int = 200, seed: int = 0, slack: float = 1e-3
) -> TranslationSample:
    """Sampled minimal translation length of g and its near-minimizers.

    Raises
    ------
    NotAutomorphismError
        If g fails the sampled invariance check.
    """
    check_automorphism(g, body)
    rng = np.random.default_rng(seed)
    points = np.vstack([body.interior_vector()[None, :], body.random_interior(rng, grid)])
    images = body.chart.lift_many(g.apply(points))
    values = np.array([chart_distance(body, x, y) for x, y in zip(points, images)])
    tau = float(values.min())
    bound = translation_length(g)
    if tau < bound - 1e-9:
        log.warning(f"Sampled translation {tau:.6g} is below the eigenvalue bound {bound:.6g}")
    argmin = [ProjectivePoint(p) for p, v in zip(points, values) if v <= tau + slack]
    return TranslationSample(tau=tau, argmin=argmin, values=values, lower_bound=bound)


@dataclass
class RankOneReport:
    rank_one: bool
    attracting: ProjectivePoint | None = None
    repelling: ProjectivePoint | None = None
    proximal: ProximalData | None = None

    def __bool__(self) -> bool:
        return self.rank_one


def is_rank_one(g: ProjectiveMap, body: ConvexBody, core: ConvexBody | None = None) -> RankOneReport:
    """Rank-one test: g biproximal and the open segment (g-, g+) inside the domain.

    With a core given, the axis must in addition meet the closed core.
    """
    data = classify_proximal(g)
    if not data.is_biproximal:
        return RankOneReport(False, proximal=data)
    try:
        a = body.chart.lift(data.repelling)
        b = body.chart.lift(data.attracting)
    except ChartError:
        return RankOneReport(False, data.attracting, data.repelling, data)
    ts = np.arange(1, AXIS_SAMPLES + 1) / (AXIS_SAMPLES + 1)
    axis = a[None, :] + ts[:, None] * (b - a)[None, :]
    inside = all(body.contains_vector(p, "open") for p in axis)
    if inside and core is not None:
        inside = core.contains_vector(core.chart.lift(axis[AXIS_SAMPLES // 2]), "closed", tol=1e-6)
    return RankOneReport(inside, data.attracting, data.repelling, data)


@dataclass
class RankOneCandidate:
    """A rank-one psi = g h^-1 with the angular errors of psi+ to x1 and psi- to x2."""

    psi: ProjectiveMap
    word: tuple[str, ...]
    attracting: ProjectivePoint
    repelling: ProjectivePoint
    attracting_error: float
    repelling_error: float
    gap: float


def rank_one_approximation(
    x1: ProjectivePoint,
    x2: ProjectivePoint,
    group: MatrixGroup,
    body: ConvexBody,
    radius: int,
    base_point: ProjectivePoint | None = None,
    neighbours: int = 5,
    max_candidates: int = MAX_CANDIDATES,
) -> list[RankOneCandidate]:
    """Rank-one elements psi = g h^-1 with g p near x1 and h p near x2.

    Candidates are sorted by word length, then by decreasing eigenvalue gap.

    Raises
    ------
    PreconditionError
        If x1 and x2 coincide or the open segment (x1, x2) leaves the domain on a sampled point.
    BudgetError
        If no pair of ball elements yields a rank-one element.
    """
    if x1 == x2:
        raise PreconditionError("Endpoints coincide, so (x1, x2) is not a segment of the domain.")
    v1, v2 = body.chart.lift(x1), body.chart.lift(x2)
    for t in np.linspace(0.05, 0.95, SEGMENT_SAMPLES):
        if not body.contains_vector((1.0 - t) * v1 + t * v2, "open"):
            raise PreconditionError(f"The segment (x1, x2) leaves the domain at parameter {t:.2f}.")
    base_point = base_point if base_point is not None else body.interior_point()
    elements = group.enumerate_ball(radius)
    orbit = orbit_vectors(group, body, base_point, radius)
    near1 = np.argsort(np.linalg.norm(orbit - v1, axis=1))[:neighbours]
    near2 = np.argsort(np.linalg.norm(orbit - v2, axis=1))[:neighbours]

    candidates = []
    for i in near1:
        for j in near2:
            if i == j:
                continue
            psi = ProjectiveMap(elements[i].matrix @ np.linalg.inv(elements[j].matrix))
            try:
                report = is_rank_one(psi, body)
            except AmbiguousClassificationError:
                continue
            if not report:
                continue
            candidates.append(
                RankOneCandidate(
                    psi=psi,
                    word=elements[i].word + group.inverse_word(elements[j].word),
                    attracting=report.attracting,
                    repelling=report.repelling,
                    attracting_error=report.attracting.angle_to(x1),
                    repelling_error=report.repelling.angle_to(x2),
                    gap=float(np.log(report.proximal.top_ratio)),
                )
            )
    if not candidates:
        raise BudgetError(f"No rank-one element found from ball({radius}).", partial=[])
    candidates.sort(key=lambda c: (len(c.word), -c.gap))
    log.info(f"{len(candidates)} rank-one candidates, best errors {min(c.attracting_error for c in candidates):.3g}")
    return candidates[:max_candidates]


def rank_one_elements(group: MatrixGroup, body: ConvexBody, radius: int) -> list[tuple[tuple[str, ...], RankOneReport]]:
    """Inventory of the rank-one elements of ball(radius)."""
    found = []
    for element in group.enumerate_ball(radius):
        try:
            report = is_rank_one(element.map, body)
        except AmbiguousClassificationError:
            continue
        if report:
            found.append((element.word, report))
    return found
