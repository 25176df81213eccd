"""Flow-invariant set, shadowing of rank-one axes and topological transitivity experiments."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy.optimize import minimize_scalar

from convex_cocompact.domain import ConvexBody
from convex_cocompact.errors import BudgetError, ChartError, GeometryError, PreconditionError
from convex_cocompact.flow.tangent import EndpointBox, UnitTangent, tangent_distance
from convex_cocompact.group import MatrixGroup, RankOneCandidate, is_rank_one, rank_one_approximation
from convex_cocompact.projlin import ProjectiveMap, ProjectivePoint, translation_length

log = logging.getLogger(__name__)

SYNC_WINDOW = 15.0
MAX_POWER = 30
TOP_CANDIDATES = 10


def in_invariant_set(v: UnitTangent, core: ConvexBody, domain: ConvexBody | None = None, tol: float = 1e-6) -> bool:
    """True if both endpoints of v lie on the boundary of the core (and of `domain`, when given)."""
    for body in (core,) if domain is None else (core, domain):
        for p in (v.backward, v.forward):
            try:
                if abs(body.boundary_offset(body.chart.lift(p))) > tol:
                    return False
            except ChartError:
                return False
    return True


@dataclass
class ShadowingProfile:
    """Distances d(phi_t(sigma), phi_{t + shift}(axis)) for t on an integer grid."""

    times: np.ndarray
    values: np.ndarray
    shift: float

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.times, "distance": self.values})


def _power(matrix: np.ndarray, n: int) -> np.ndarray:
    base = matrix if n >= 0 else np.linalg.inv(matrix)
    out = np.linalg.matrix_power(base, abs(n))
    return out / np.linalg.norm(out, 2)


def _power_transform(
    g: ProjectiveMap, attracting: ProjectivePoint, repelling: ProjectivePoint, n: int, v: UnitTangent
) -> UnitTangent:
    """g^n v for biproximal g, moving endpoints on the eigenlines g+ and g- by their exact eigenvalues.

    A contracted eigenline loses all its digits under a large matrix power.
    """
    raw = np.linalg.matrix_power(g.lift if n >= 0 else np.linalg.inv(g.lift), abs(n))
    chart = v.chart

    def image(p: ProjectivePoint) -> np.ndarray:
        x = chart.lift(p)
        for line in (attracting, repelling):
            if p == line:
                return x * float(line.direction @ g.lift @ line.direction) ** n
        return raw @ x

    ga, gb = image(v.backward), image(v.forward)
    alpha, beta = chart.covector @ ga, chart.covector @ gb
    if alpha * beta <= 0:
        raise ChartError("The image geodesic is not contained in the chart.")
    return UnitTangent(chart, ProjectivePoint(ga), ProjectivePoint(gb), v.offset + 0.5 * float(np.log(beta / alpha)))


def axis_shadowing_error(
    body: ConvexBody, g: ProjectiveMap, w: ProjectivePoint, T: float = 20.0, base_offset: float = 0.0
) -> ShadowingProfile:
    """Distance profile between the ray from w towards g+ and the axis of g, synchronized at T / 2.

    Both vectors are pulled back by a power of g before each distance evaluation so that their base
    points stay away from the boundary; g preserves the Hilbert metric.

    Raises
    ------
    PreconditionError
        If g is not rank-one or w is the attracting point of g.
    """
    report = is_rank_one(g, body)
    if not report:
        raise PreconditionError("The element is not rank-one in this domain.")
    if w == report.attracting:
        raise PreconditionError("The backward endpoint must differ from the attracting point of g.")
    sigma = UnitTangent.from_endpoints(body, w, report.attracting, offset=base_offset)
    axis = UnitTangent.from_endpoints(body, report.repelling, report.attracting)
    ell = translation_length(g)

    def distance(v1: UnitTangent, v2: UnitTangent) -> float:
        n = int(round(0.5 * (v1.offset + v2.offset) / ell))
        pulled = [_power_transform(g, report.attracting, report.repelling, -n, v) for v in (v1, v2)]
        return tangent_distance(body, *pulled)

    anchor = sigma.shifted(T / 2)
    coarse = anchor.offset + np.arange(-SYNC_WINDOW, SYNC_WINDOW + 0.25, 0.5)
    guess = coarse[int(np.argmin([distance(anchor, axis.shifted(s - axis.offset)) for s in coarse]))]
    res = minimize_scalar(
        lambda s: distance(anchor, axis.shifted(s - axis.offset)),
        bounds=(guess - 0.5, guess + 0.5),
        method="bounded",
        options={"xatol": 1e-11},
    )
    shift = float(res.x) - axis.offset - T / 2
    times = np.arange(0.0, T + 0.5, 1.0)
    values = np.array([distance(sigma.shifted(t), axis.shifted(t + shift)) for t in times])
    log.info(f"Shadowing profile: start {values[0]:.3g}, end {values[-1]:.3g}")
    return ShadowingProfile(times=times, values=values, shift=shift)


@dataclass
class TransitivityWitness:
    """Outcome of a transitivity search: g.phi_t(u) lies in V for u in U, or a diagnostic."""

    found: bool
    word: tuple[str, ...] = ()
    matrix: np.ndarray | None = field(default=None, repr=False)
    t: float = 0.0
    u: UnitTangent | None = None
    image: UnitTangent | None = None
    diagnostic: str | None = None

    @property
    def exhausted(self) -> bool:
        return not self.found


def _best(candidates: list[RankOneCandidate]) -> list[RankOneCandidate]:
    return sorted(candidates, key=lambda c: c.attracting_error + c.repelling_error)[:TOP_CANDIDATES]


def _settle(body: ConvexBody, box: EndpointBox, image: UnitTangent) -> tuple[UnitTangent, float]:
    """Flow `image` to the point of its geodesic closest to the box center."""
    center = box.center(body)
    res = minimize_scalar(
        lambda s: tangent_distance(body, image.shifted(s), center),
        bounds=(-image.offset - 12.0, -image.offset + 12.0),
        method="bounded",
    )
    return image.shifted(float(res.x)), float(res.x)


def _search(
    body: ConvexBody,
    group: MatrixGroup,
    U: EndpointBox,
    V: EndpointBox,
    psi1: RankOneCandidate,
    psi2: RankOneCandidate,
    max_power: int,
) -> TransitivityWitness | None:
    if psi1.repelling == psi2.attracting:
        return None
    w0 = UnitTangent(body.chart, psi1.repelling, psi2.attracting, 0.0)
    for k1 in range(1, max_power + 1):
        pushed = _power_transform(psi1.psi, psi1.attracting, psi1.repelling, k1, w0)
        if U.endpoints_match(pushed):
            break
    else:
        return None
    for k2 in range(1, max_power + 1):
        pulled = _power_transform(psi2.psi, psi2.attracting, psi2.repelling, -k2, w0)
        if V.endpoints_match(pulled):
            break
    else:
        return None
    u, s1 = _settle(body, U, pushed)
    v, s2 = _settle(body, V, pulled)
    if not (U.contains(body, u) and V.contains(body, v)):
        return None
    t = s2 - s1
    g = _power(psi2.psi.lift, -k2) @ _power(psi1.psi.lift, -k1)
    # g psi1^k1 = psi2^-k2, so g phi_t(u) is v
    word = group.inverse_word(psi2.word) * k2 + group.inverse_word(psi1.word) * k1
    return TransitivityWitness(True, word=word, matrix=g / np.linalg.norm(g, 2), t=t, u=u, image=v)


def transitivity_experiment(
    group: MatrixGroup,
    body: ConvexBody,
    U: EndpointBox,
    V: EndpointBox,
    radius: int,
    core: ConvexBody | None = None,
    max_power: int = MAX_POWER,
) -> TransitivityWitness:
    """Search g in the group and a flow time t with g.phi_t(U) meeting V.

    Rank-one elements psi1 ~ (U-, U+) and psi2 ~ (V-, V+) are approximated from ball(radius); the
    geodesic w0 from psi1- to psi2+ is pushed by powers of psi1 into U and by powers of psi2^-1 into V.
    The returned element may be longer than `radius`. Budget exhaustion and failed preconditions are
    reported through `diagnostic` rather than raised.
    """
    if U.same_as(V):
        u = U.center(body)
        return TransitivityWitness(True, word=(), matrix=np.eye(body.dim), t=0.0, u=u, image=u)
    if core is not None:
        for name, box in (("U", U), ("V", V)):
            if not in_invariant_set(box.center(body), core, body):
                return TransitivityWitness(False, diagnostic=f"The center of {name} is not in the invariant set.")
    try:
        first = _best(rank_one_approximation(U.forward, U.backward, group, body, radius))
        second = _best(rank_one_approximation(V.forward, V.backward, group, body, radius))
    except (BudgetError, PreconditionError) as err:
        log.warning(f"Transitivity search exhausted: {err}")
        return TransitivityWitness(False, diagnostic=str(err))
    for psi1 in first:
        for psi2 in second:
            try:
                witness = _search(body, group, U, V, psi1, psi2, max_power)
            except GeometryError as err:
                log.debug(f"Skipping pair {psi1.word} / {psi2.word}: {err}")
                continue
            if witness is not None:
                log.info(f"Transitivity witness of length {len(witness.word)} with t = {witness.t:.4g}")
                return witness
    message = f"No pair of rank-one approximations from ball({radius}) lands in both boxes."
    log.warning(message)
    return TransitivityWitness(False, diagnostic=message)
