"""Eigenvalue and singular-value utilities, proximality and power limits."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from convex_cocompact.errors import AmbiguousClassificationError, PreconditionError
from convex_cocompact.projlin.maps import EndomorphismClass, ProjectiveMap, projective_difference
from convex_cocompact.projlin.points import ProjectivePoint, Subspace

log = logging.getLogger(__name__)

GAP_TOL = 1e-8
POWER_TOL = 1e-12
MAX_POWER_STEPS = 10_000


def eigenvalue_moduli(g: ProjectiveMap) -> np.ndarray:
    """lambda_1(g) >= ... >= lambda_d(g) for the unit-determinant lift."""
    return np.sort(np.abs(np.linalg.eigvals(g.lift)))[::-1]


def singular_values(g: ProjectiveMap) -> np.ndarray:
    """mu_1(g) >= ... >= mu_d(g) for the unit-determinant lift."""
    return np.linalg.svd(g.lift, compute_uv=False)


def translation_length(g: ProjectiveMap) -> float:
    """Minimal translation length 1/2 log(lambda_1 / lambda_d)."""
    moduli = eigenvalue_moduli(g)
    return float(max(0.0, 0.5 * np.log(moduli[0] / moduli[-1])))


def _gap_decision(ratio: float, gap_tol: float, which: str) -> bool:
    """True if the gap is real, False if the moduli are numerically equal, raise in between."""
    excess = ratio - 1.0
    if excess > gap_tol:
        return True
    if excess <= gap_tol * 1e-2:
        return False
    raise AmbiguousClassificationError(
        f"{which} eigenvalue ratio {ratio!r} lies in the ambiguity band (1, 1 + {gap_tol}]."
    )


@dataclass(frozen=True)
class ProximalData:
    """Attracting/repelling data of g, see `classify_proximal`."""

    is_proximal: bool
    is_biproximal: bool
    attracting: ProjectivePoint | None = None
    repelling_hyperplane: Subspace | None = None
    repelling: ProjectivePoint | None = None
    attracting_hyperplane: Subspace | None = None
    top_ratio: float = 1.0
    bottom_ratio: float = 1.0


def _eigenline(matrix: np.ndarray, index: str) -> tuple[np.ndarray, np.ndarray]:
    """Right and left eigenvectors for the top (`index="top"`) or bottom eigenvalue modulus."""
    vals, vecs = np.linalg.eig(matrix)
    pick = int(np.argmax(np.abs(vals))) if index == "top" else int(np.argmin(np.abs(vals)))
    lam = vals[pick]
    lvals, lvecs = np.linalg.eig(matrix.T)
    lpick = int(np.argmin(np.abs(lvals - lam)))
    right = np.real(vecs[:, pick])
    left = np.real(lvecs[:, lpick])
    return right / np.linalg.norm(right), left / np.linalg.norm(left)


def classify_proximal(g: ProjectiveMap, gap_tol: float = GAP_TOL) -> ProximalData:
    """Decide (bi)proximality of g and compute g^+, H_g^-, g^-, H_g^+.

    Parameters
    ----------
    g : ProjectiveMap
        The map to classify.
    gap_tol : float, optional
        g is proximal iff lambda_1/lambda_2 > 1 + gap_tol, by default 1e-8.

    Returns
    -------
    ProximalData
        Classification with eigen-data.

    Raises
    ------
    AmbiguousClassificationError
        If a relevant ratio lies in the band where equality cannot be decided.
    """
    if gap_tol <= 0:
        raise PreconditionError("gap_tol must be positive.")
    if g.dim < 2:
        return ProximalData(is_proximal=False, is_biproximal=False)
    moduli = eigenvalue_moduli(g)
    top_ratio = float(moduli[0] / moduli[1])
    bottom_ratio = float(moduli[-2] / moduli[-1])
    if not _gap_decision(top_ratio, gap_tol, "Top"):
        return ProximalData(is_proximal=False, is_biproximal=False, top_ratio=top_ratio, bottom_ratio=bottom_ratio)

    right, left = _eigenline(g.lift, "top")
    if abs(right @ left) < 1e-8:
        raise AmbiguousClassificationError("Attracting line is numerically inside the repelling hyperplane.")
    attracting = ProjectivePoint(right)
    repelling_hyperplane = Subspace(scipy.linalg.null_space(left[None, :]))

    biproximal = _gap_decision(bottom_ratio, gap_tol, "Bottom")
    if not biproximal:
        return ProximalData(
            is_proximal=True,
            is_biproximal=False,
            attracting=attracting,
            repelling_hyperplane=repelling_hyperplane,
            top_ratio=top_ratio,
            bottom_ratio=bottom_ratio,
        )
    right_inv, left_inv = _eigenline(g.lift, "bottom")
    return ProximalData(
        is_proximal=True,
        is_biproximal=True,
        attracting=attracting,
        repelling_hyperplane=repelling_hyperplane,
        repelling=ProjectivePoint(right_inv),
        attracting_hyperplane=Subspace(scipy.linalg.null_space(left_inv[None, :])),
        top_ratio=top_ratio,
        bottom_ratio=bottom_ratio,
    )


def power_limit(g: ProjectiveMap, tol: float = POWER_TOL, max_steps: int = MAX_POWER_STEPS) -> EndomorphismClass:
    """T_g = lim g^n in P(End(R^d)) for proximal g.

    Iterates g with per-step renormalization until successive powers differ by less than `tol`.
    After `max_steps` it falls back to the rank-one projector onto g^+ along H_g^-.
    """
    data = classify_proximal(g)
    if not data.is_proximal:
        raise PreconditionError("power_limit requires a proximal map.")
    current = g.lift / np.linalg.norm(g.lift)
    for step in range(max_steps):
        nxt = g.lift @ current
        nxt /= np.linalg.norm(nxt)
        diff = projective_difference(nxt, current)
        current = nxt
        if diff < tol:
            log.debug(f"power_limit converged after {step + 1} steps")
            return EndomorphismClass.from_matrix(current)
    log.info(f"power_limit did not settle in {max_steps} steps, using the eigen projector")
    right, left = _eigenline(g.lift, "top")
    return EndomorphismClass.from_matrix(np.outer(right, left) / (left @ right))


def orbit_power_point(g: ProjectiveMap, z: ProjectivePoint, n: int) -> ProjectivePoint:
    """[g^n z], renormalizing after every step so that large n stays finite."""
    vec = z.direction.copy()
    mat = g.lift if n >= 0 else np.linalg.inv(g.lift)
    for _ in range(abs(n)):
        vec = mat @ vec
        vec /= np.linalg.norm(vec)
    return ProjectivePoint(vec)
