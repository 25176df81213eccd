"""Projective transformations, endomorphism classes and their limits."""
from __future__ import annotations

from typing import Sequence, Union

import logging
from dataclasses import dataclass

import numpy as np

from convex_cocompact.errors import InvalidMapError, KernelProximityError
from convex_cocompact.projlin.points import ProjectivePoint, Subspace, canonical_sign

log = logging.getLogger(__name__)

MAP_TOL = 1e-10
MAX_CONDITION = 1e14
RANK_TOL = 1e-9


def _check_square(matrix: np.ndarray) -> np.ndarray:
    mat = np.asarray(matrix, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
        raise InvalidMapError(f"Expected a non-empty square matrix, got shape {mat.shape}.")
    if not np.all(np.isfinite(mat)):
        raise InvalidMapError("Matrix has non-finite entries.")
    return mat


def canonical_lift(matrix: np.ndarray) -> np.ndarray:
    """Unit Frobenius norm, sign-canonical representative of a matrix up to scale."""
    flat = matrix.reshape(-1) / np.linalg.norm(matrix)
    return canonical_sign(flat).reshape(matrix.shape)


def projective_difference(a: np.ndarray, b: np.ndarray) -> float:
    """Distance between two normalized matrices, blind to the sign of the lift."""
    return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))


@dataclass(frozen=True, eq=False)
class ProjectiveMap:
    """An element of PGL_d(R) with a lift normalized to |det| = 1."""

    lift: np.ndarray

    def __post_init__(self) -> None:
        mat = _check_square(self.lift)
        cond = np.linalg.cond(mat)
        if not np.isfinite(cond) or cond > MAX_CONDITION:
            raise InvalidMapError(f"Matrix is singular (condition number {cond:.3g}).")
        det = abs(np.linalg.det(mat))
        mat = mat / det ** (1.0 / mat.shape[0])
        mat.setflags(write=False)
        object.__setattr__(self, "lift", mat)

    @classmethod
    def identity(cls, dim: int) -> ProjectiveMap:
        return cls(np.eye(dim))

    @classmethod
    def diag(cls, *entries: float) -> ProjectiveMap:
        return cls(np.diag(np.asarray(entries, dtype=float)))

    @property
    def dim(self) -> int:
        return int(self.lift.shape[0])

    def __matmul__(self, other: ProjectiveMap) -> ProjectiveMap:
        return ProjectiveMap(self.lift @ other.lift)

    def __call__(self, x: ProjectivePoint) -> ProjectivePoint:
        return ProjectivePoint(self.lift @ x.direction)

    def apply(self, vectors: np.ndarray) -> np.ndarray:
        """Apply the lift to the rows of an (n, d) array without normalizing."""
        return np.asarray(vectors, dtype=float) @ self.lift.T

    def inverse(self) -> ProjectiveMap:
        return ProjectiveMap(np.linalg.inv(self.lift))

    def power(self, n: int) -> ProjectiveMap:
        base = self.lift if n >= 0 else np.linalg.inv(self.lift)
        return ProjectiveMap(np.linalg.matrix_power(base, abs(n)))

    def canonical(self) -> np.ndarray:
        return canonical_lift(self.lift)

    def is_identity(self, tol: float = MAP_TOL) -> bool:
        return projective_difference(self.canonical(), canonical_lift(np.eye(self.dim))) <= tol

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjectiveMap) or other.dim != self.dim:
            return NotImplemented
        return projective_difference(self.canonical(), other.canonical()) <= MAP_TOL

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ProjectiveMap(dim={self.dim}, lift={np.array2string(self.lift, precision=4)})"


@dataclass(frozen=True, eq=False)
class EndomorphismClass:
    """A nonzero matrix up to scale, i.e. a point of P(End(R^d)).

    The representative has unit operator norm. The kernel is None when the matrix is invertible.
    """

    rep: np.ndarray
    kernel: Subspace | None
    image: Subspace

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, rank_tol: float = RANK_TOL) -> EndomorphismClass:
        mat = _check_square(matrix)
        u, s, vt = np.linalg.svd(mat)
        if s[0] == 0:
            raise InvalidMapError("The zero matrix is not a point of P(End(R^d)).")
        rep = canonical_sign((mat / s[0]).reshape(-1)).reshape(mat.shape)
        rank = int(np.sum(s > rank_tol * s[0]))
        image = Subspace(u[:, :rank])
        kernel = Subspace(vt[rank:].T) if rank < mat.shape[0] else None
        rep.setflags(write=False)
        return cls(rep=rep, kernel=kernel, image=image)

    @property
    def dim(self) -> int:
        return int(self.rep.shape[0])

    @property
    def rank(self) -> int:
        return self.image.dim


def _as_matrix(g: Union[ProjectiveMap, np.ndarray]) -> np.ndarray:
    return g.lift if isinstance(g, ProjectiveMap) else _check_square(g)


def apply_endo(T: EndomorphismClass, x: ProjectivePoint, kernel_tol: float = 1e-9) -> ProjectivePoint:
    """Apply T to [x], which must stay away from P(ker T).

    Parameters
    ----------
    T : EndomorphismClass
        The endomorphism.
    x : ProjectivePoint
        Point outside the kernel.
    kernel_tol : float, optional
        Minimal angular distance to the kernel, by default 1e-9.

    Returns
    -------
    ProjectivePoint
        The image [T x].

    Raises
    ------
    KernelProximityError
        If x lies within `kernel_tol` of P(ker T).
    """
    if T.kernel is not None and T.kernel.distance(x.direction) < kernel_tol:
        raise KernelProximityError(f"{x} lies within {kernel_tol} of the kernel.")
    return ProjectivePoint(T.rep @ x.direction)


def sequence_limit(
    gs: Sequence[Union[ProjectiveMap, np.ndarray]], tol: float = 1e-10, tail: int = 3
) -> EndomorphismClass | None:
    """Limit of a sequence in P(End(R^d)), or None if the tail does not settle.

    Each term is rescaled to unit operator norm; the sequence counts as convergent when the last
    `tail` successive differences are all below `tol`.
    """
    if len(gs) == 0:
        raise ValueError("sequence_limit needs a nonempty sequence.")
    normalized = []
    for g in gs:
        mat = _as_matrix(g)
        normalized.append(mat / np.linalg.norm(mat, 2))
    diffs = [projective_difference(a, b) for a, b in zip(normalized[:-1], normalized[1:])]
    window = diffs[-tail:]
    if any(d >= tol for d in window):
        log.debug(f"No limit: tail differences {window}")
        return None
    return EndomorphismClass.from_matrix(normalized[-1])
