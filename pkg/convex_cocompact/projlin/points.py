"""Points and linear subspaces of real projective space."""
from __future__ import annotations

from typing import Iterable, Sequence, Union

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from convex_cocompact.errors import DegeneracyError, InvalidMapError

POINT_TOL = 1e-12
SUBSPACE_TOL = 1e-10

ArrayLike = Union[np.ndarray, Sequence[float]]


def canonical_sign(vec: np.ndarray, rel_tol: float = 1e-9) -> np.ndarray:
    """Flip the sign of `vec` so that its first non-negligible coordinate is positive."""
    scale = np.max(np.abs(vec))
    if scale == 0:
        return vec
    idx = int(np.argmax(np.abs(vec) > rel_tol * scale))
    return vec if vec[idx] > 0 else -vec


def angular_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Angle in [0, pi/2] between the lines spanned by two unit vectors."""
    chord = min(np.linalg.norm(u - v), np.linalg.norm(u + v))
    return float(2.0 * np.arcsin(min(1.0, chord / 2.0)))


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """A point [v] of P(R^d), stored as a unit, sign-canonical direction vector."""

    direction: np.ndarray

    def __post_init__(self) -> None:
        vec = np.asarray(self.direction, dtype=float).reshape(-1)
        if not np.all(np.isfinite(vec)):
            raise InvalidMapError("Projective point has non-finite coordinates.")
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise DegeneracyError("The zero vector does not define a projective point.")
        vec = canonical_sign(vec / norm)
        vec.setflags(write=False)
        object.__setattr__(self, "direction", vec)

    @classmethod
    def from_coords(cls, *coords: float) -> ProjectivePoint:
        """Build [x_1 : ... : x_d] from homogeneous coordinates."""
        return cls(np.array(coords, dtype=float))

    @property
    def dim(self) -> int:
        """Dimension d of the ambient vector space."""
        return int(self.direction.shape[0])

    def angle_to(self, other: ProjectivePoint) -> float:
        return angular_distance(self.direction, other.direction)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjectivePoint) or other.dim != self.dim:
            return NotImplemented
        return bool(abs(self.direction @ other.direction) >= 1.0 - POINT_TOL)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        coords = " : ".join(f"{c:.6g}" for c in self.direction)
        return f"[{coords}]"


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace V of R^d, stored by an orthonormal d x k column basis."""

    basis: np.ndarray

    def __post_init__(self) -> None:
        basis = np.asarray(self.basis, dtype=float)
        if basis.ndim == 1:
            basis = basis[:, None]
        gram = basis.T @ basis
        if not np.allclose(gram, np.eye(basis.shape[1]), atol=SUBSPACE_TOL):
            raise DegeneracyError("Subspace basis is not orthonormal; use Subspace.span instead.")
        basis = basis.copy()
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @classmethod
    def span(cls, vectors: Iterable[ArrayLike], rank_tol: float = 1e-9) -> Subspace:
        """Orthonormalize a spanning set, dropping directions below `rank_tol`.

        Parameters
        ----------
        vectors : Iterable[ArrayLike]
            Spanning vectors (or ProjectivePoint directions), all of the same length.
        rank_tol : float, optional
            Relative threshold on singular values, by default 1e-9.

        Returns
        -------
        Subspace
            The span of the vectors.
        """
        mat = np.column_stack([np.asarray(v.direction if isinstance(v, ProjectivePoint) else v, dtype=float)
                               for v in vectors])
        u, s, _ = np.linalg.svd(mat, full_matrices=False)
        if s.size == 0 or s[0] == 0:
            raise DegeneracyError("Cannot span a subspace from zero vectors.")
        rank = int(np.sum(s > rank_tol * s[0]))
        return cls(u[:, :rank])

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    @property
    def ambient_dim(self) -> int:
        return int(self.basis.shape[0])

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T

    def distance(self, vec: ArrayLike) -> float:
        """Sine of the angle between the line of `vec` and this subspace."""
        v = np.asarray(vec.direction if isinstance(vec, ProjectivePoint) else vec, dtype=float)
        v = v / np.linalg.norm(v)
        return float(np.linalg.norm(v - self.basis @ (self.basis.T @ v)))

    def contains(self, vec: ArrayLike, tol: float = 1e-9) -> bool:
        return self.distance(vec) <= tol

    def complement(self) -> Subspace | None:
        """Orthogonal complement, or None for the whole space."""
        if self.dim == self.ambient_dim:
            return None
        return Subspace(scipy.linalg.null_space(self.basis.T))

    def min_angle_to(self, other: Subspace) -> float:
        """Smallest principal angle between two subspaces, zero when they intersect."""
        return float(np.min(scipy.linalg.subspace_angles(self.basis, other.basis)))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def hyperplane(normal: ArrayLike) -> Subspace:
    """The hyperplane annihilated by the covector `normal`."""
    n = np.asarray(normal, dtype=float).reshape(1, -1)
    return Subspace(scipy.linalg.null_space(n))


def hyperplane_normal(plane: Subspace) -> np.ndarray:
    """Unit normal covector of a hyperplane."""
    if plane.dim != plane.ambient_dim - 1:
        raise DegeneracyError(f"Expected a hyperplane, got a subspace of dimension {plane.dim}.")
    normal = scipy.linalg.null_space(plane.basis.T)[:, 0]
    return canonical_sign(normal)
