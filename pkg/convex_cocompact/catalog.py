"""Examples with exactly known domains, groups and convex cores."""
from __future__ import annotations

from typing import Any, Callable

import logging
from dataclasses import dataclass, field

import numpy as np

from convex_cocompact.domain import (
    AffineChart,
    ConvexBody,
    EllipsoidBody,
    PolytopeBody,
    check_automorphism,
    cone_over_base,
    ellipsoid_from_form,
    make_simplex,
)
from convex_cocompact.errors import ChartError, PreconditionError
from convex_cocompact.group import MatrixGroup
from convex_cocompact.projlin import ProjectiveMap, ProjectivePoint

log = logging.getLogger(__name__)

INVARIANCE_TOL = 1e-8
REFERENCE_DEPTH = 14
VERONESE_FORM = np.array([[0.0, 0.0, -0.5], [0.0, 1.0, 0.0], [-0.5, 0.0, 0.0]])


@dataclass
class CatalogEntry:
    """A domain with a group of automorphisms and the facts known about them in closed form."""

    name: str
    domain: ConvexBody
    group: MatrixGroup
    truth: dict[str, Any] = field(default_factory=dict)
    base_point: ProjectivePoint | None = None
    limit_depth: float = 5.0


def cartan_matrix(p: int, q: int, r: int, deformation: float = 1.0) -> np.ndarray:
    """Cartan matrix of the (p, q, r) triangle group, with A_12 scaled by t and A_21 by 1 / t."""
    if min(p, q, r) < 2:
        raise PreconditionError("Triangle group orders must be at least 2.")
    if deformation <= 0:
        raise PreconditionError("The deformation parameter must be positive.")
    orders = {(0, 1): p, (1, 2): q, (0, 2): r}
    A = 2.0 * np.eye(3)
    for (i, j), m in orders.items():
        A[i, j] = A[j, i] = -2.0 * np.cos(np.pi / m)
    A[0, 1] *= deformation
    A[1, 0] /= deformation
    return A


def reflections(cartan: np.ndarray) -> list[ProjectiveMap]:
    """Reflections x -> x - (A_i . x) e_i of the Tits representation."""
    d = cartan.shape[0]
    return [ProjectiveMap(np.eye(d) - np.outer(np.eye(d)[i], cartan[i])) for i in range(d)]


def coxeter_orders(p: int, q: int, r: int) -> np.ndarray:
    return np.array([[1, p, r], [p, 1, q], [r, q, 1]])


def sylvester(form: np.ndarray) -> np.ndarray:
    """M with form = M^T J M and J = diag(1, ..., 1, -1) for a form of signature (d - 1, 1)."""
    w, Q = np.linalg.eigh(0.5 * (form + form.T))
    order = np.argsort(-w)
    if np.sum(w < 0) != 1:
        raise PreconditionError("Form does not have signature (d - 1, 1).")
    return np.sqrt(np.abs(w[order]))[:, None] * Q[:, order].T


def sym2(m: np.ndarray) -> np.ndarray:
    """Symmetric square of a 2x2 matrix on the basis (u^2, uv, v^2)."""
    (a, b), (c, d) = m
    return np.array(
        [
            [a * a, 2 * a * b, b * b],
            [a * c, a * d + b * c, b * d],
            [c * c, 2 * c * d, d * d],
        ]
    )


def _orbit_hull(group: MatrixGroup, point: ProjectivePoint, depth: int, charts: list[AffineChart]) -> PolytopeBody:
    orbit = group.ball_matrices(depth) @ point.direction
    for chart in charts:
        pairing = orbit @ chart.covector
        if np.all(pairing > 1e-9) or np.all(pairing < -1e-9):
            return PolytopeBody(chart, chart.lift_many(orbit))
    raise ChartError("No candidate chart contains the orbit on one side.")


def triangle_pqr(
    p: int = 3, q: int = 3, r: int = 4, deformation: float = 1.0, depth: int = REFERENCE_DEPTH
) -> CatalogEntry:
    A = cartan_matrix(p, q, r, deformation)
    group = MatrixGroup(reflections(A), ["r1", "r2", "r3"])
    base = ProjectivePoint(-np.linalg.solve(A, np.ones(3)))
    symmetric = ellipsoid_from_form(cartan_matrix(p, q, r))
    exact = deformation == 1.0
    if exact:
        domain: ConvexBody = symmetric
    else:
        charts = [symmetric.chart, AffineChart(A.T @ base.direction), AffineChart(np.ones(3))]
        domain = _orbit_hull(group, base, depth, charts)
    truth = {
        "orders": coxeter_orders(p, q, r).tolist(),
        "deformation": deformation,
        "exact": exact,
        "reference_depth": None if exact else depth,
        "strictly_convex": True,
        "divisible": True,
        "core": "domain",
    }
    return CatalogEntry("triangle-pqr", domain, group, truth, base_point=base, limit_depth=5.0)


def sym2_fuchsian(p: int = 3, q: int = 3, r: int = 4) -> CatalogEntry:
    """Rotation subgroup <r1 r2, r2 r3> of a triangle group, moved into SO of the Veronese form.

    The final conjugation makes the hyperbolic element x y^-1 x^-1 y diagonal.
    """
    A = cartan_matrix(p, q, r)
    r1, r2, r3 = (g.lift for g in reflections(A))
    conj = np.linalg.solve(sylvester(VERONESE_FORM), sylvester(A))
    mats = [conj @ m @ np.linalg.inv(conj) for m in (r1 @ r2, r2 @ r3)]
    x, y = mats
    h = x @ np.linalg.inv(y) @ np.linalg.inv(x) @ y
    vals, vecs = np.linalg.eig(h)
    order = np.argsort(np.abs(vals))
    top, bottom = np.real(vecs[:, order[-1]]), np.real(vecs[:, order[0]])
    t_plus, t_minus = top[1] / top[0], bottom[1] / bottom[0]
    K = sym2(np.array([[-t_minus, 1.0], [-t_plus, 1.0]]))
    maps = [ProjectiveMap(K @ m @ np.linalg.inv(K)) for m in mats]
    group = MatrixGroup(maps, ["x", "y"])
    domain = ellipsoid_from_form(VERONESE_FORM, AffineChart(np.array([1.0, 0.0, 1.0])))
    word = ("x", "y^-1", "x^-1", "y")
    truth = {
        "form": VERONESE_FORM.tolist(),
        "hyperbolic_word": word,
        "orders": coxeter_orders(p, q, r).tolist(),
        "core": "domain",
        "anosov": True,
    }
    return CatalogEntry("sym2-fuchsian", domain, group, truth, base_point=ProjectivePoint.from_coords(1.0, 0.0, 1.0))


def cone_fuchsian(p: int = 3, q: int = 3, r: int = 4, scale: float = 8.0) -> CatalogEntry:
    """Block group [1 + R] x <diag(scale, 1, 1, 1)> preserving the cone over a Klein-model disc."""
    if scale <= 1.0:
        raise PreconditionError("The vertex scaling must exceed 1.")
    A = cartan_matrix(p, q, r)
    disc = ellipsoid_from_form(A)
    embed = np.zeros((4, 3))
    embed[1:, :] = np.eye(3)
    chart = AffineChart(embed @ disc.chart.covector)
    base = EllipsoidBody(chart, embed @ disc.center, embed @ disc.axes)
    domain = cone_over_base(ProjectivePoint.from_coords(1.0, 0.0, 0.0, 0.0), base)
    blocks = []
    for g in reflections(A):
        m = np.eye(4)
        m[1:, 1:] = g.lift
        blocks.append(ProjectiveMap(m))
    z = ProjectiveMap.diag(scale, 1.0, 1.0, 1.0)
    group = MatrixGroup(blocks + [z], ["r1", "r2", "r3", "z"])
    truth = {"orders": coxeter_orders(p, q, r).tolist(), "core": "domain", "vertex": [1.0, 0.0, 0.0, 0.0]}
    return CatalogEntry("cone-fuchsian", domain, group, truth, base_point=domain.interior_point())


def simplex_z2(a: tuple[float, ...] = (4.0, 2.0, 1.0), b: tuple[float, ...] = (1.0, 4.0, 2.0)) -> CatalogEntry:
    """Diagonal Z^2 acting on the standard 2-simplex."""
    domain = make_simplex([ProjectivePoint(e) for e in np.eye(3)])
    group = MatrixGroup([ProjectiveMap.diag(*a), ProjectiveMap.diag(*b)], ["a", "b"])
    truth = {"core": "domain", "rank_one": 0, "fixed_subspace_dim": 3, "components": 3}
    return CatalogEntry("simplex-z2", domain, group, truth, base_point=ProjectivePoint.from_coords(1.0, 1.0, 1.0))


EXAMPLES: dict[str, Callable[..., CatalogEntry]] = {
    "simplex-z2": simplex_z2,
    "triangle-pqr": triangle_pqr,
    "cone-fuchsian": cone_fuchsian,
    "sym2-fuchsian": sym2_fuchsian,
}


def list_examples() -> list[str]:
    return sorted(EXAMPLES)


def load_example(name: str, **params: Any) -> CatalogEntry:
    """Build a catalog entry and check that its generators preserve the domain.

    Raises
    ------
    KeyError
        If `name` is not a catalog example.
    """
    if name not in EXAMPLES:
        raise KeyError(f"Unknown example {name!r}; choose one of {list_examples()}.")
    entry = EXAMPLES[name](**params)
    if entry.truth.get("exact", True):
        for g in entry.group.generators:
            check_automorphism(g, entry.domain, tol=INVARIANCE_TOL)
    log.info(f"Loaded {name}: {entry.group} on {entry.domain}")
    return entry
