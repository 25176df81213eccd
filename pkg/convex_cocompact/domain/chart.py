from __future__ import annotations

from typing import Sequence, Union

from dataclasses import dataclass, field

import numpy as np

from convex_cocompact.errors import ChartError, DegeneracyError
from convex_cocompact.projlin import ProjectivePoint

CHART_TOL = 1e-12

PointLike = Union[ProjectivePoint, np.ndarray, Sequence[float]]


def _vector(x: PointLike) -> np.ndarray:
    if isinstance(x, ProjectivePoint):
        return x.direction
    return np.asarray(x, dtype=float)


@dataclass(frozen=True, eq=False)
class AffineChart:
    """The affine chart {[x] : <b, x> != 0}, with chart vectors normalized to <b, x> = 1.

    Chart coordinates are taken in an orthonormal frame of b^perp obtained from the Householder
    reflection exchanging e_d and b, so that b = e_d gives the usual coordinates x_i / x_d.
    """

    covector: np.ndarray
    frame: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        b = np.asarray(self.covector, dtype=float).reshape(-1)
        norm = np.linalg.norm(b)
        if norm == 0 or not np.isfinite(norm):
            raise DegeneracyError("Chart covector must be a finite nonzero vector.")
        b = b / norm
        d = b.shape[0]
        w = np.zeros(d)
        w[-1] = 1.0
        w = w - b
        householder = np.eye(d)
        if np.linalg.norm(w) > CHART_TOL:
            householder -= 2.0 * np.outer(w, w) / (w @ w)
        frame = householder[:, : d - 1].copy()
        b.setflags(write=False)
        frame.setflags(write=False)
        object.__setattr__(self, "covector", b)
        object.__setattr__(self, "frame", frame)

    @classmethod
    def standard(cls, dim: int) -> AffineChart:
        """The chart x_d != 0."""
        b = np.zeros(dim)
        b[-1] = 1.0
        return cls(b)

    @property
    def dim(self) -> int:
        return int(self.covector.shape[0])

    def same_as(self, other: AffineChart, tol: float = CHART_TOL) -> bool:
        return bool(np.linalg.norm(self.covector - other.covector) <= tol)

    def pairing(self, x: PointLike) -> float:
        """<b, x> for the unit representative of x."""
        v = _vector(x)
        return float(self.covector @ v / np.linalg.norm(v))

    def contains(self, x: PointLike, margin: float = CHART_TOL) -> bool:
        return abs(self.pairing(x)) > margin

    def lift(self, x: PointLike) -> np.ndarray:
        """Chart vector x / <b, x>."""
        v = _vector(x)
        v = v / np.linalg.norm(v)
        pair = self.covector @ v
        if abs(pair) <= CHART_TOL:
            raise ChartError(f"Point {v} lies on the hyperplane at infinity of the chart.")
        return v / pair

    def lift_many(self, vectors: np.ndarray) -> np.ndarray:
        """Row-wise chart vectors of an (n, d) array."""
        arr = np.asarray(vectors, dtype=float)
        arr = arr / np.linalg.norm(arr, axis=1, keepdims=True)
        pair = arr @ self.covector
        if np.any(np.abs(pair) <= CHART_TOL):
            raise ChartError("Some points lie on the hyperplane at infinity of the chart.")
        return arr / pair[:, None]

    def to_coords(self, x: PointLike) -> np.ndarray:
        return self.frame.T @ self.lift(x)

    def coords_many(self, vectors: np.ndarray) -> np.ndarray:
        return self.lift_many(vectors) @ self.frame

    def vector_from_coords(self, coords: Sequence[float]) -> np.ndarray:
        c = np.asarray(coords, dtype=float).reshape(-1)
        if c.shape[0] != self.dim - 1:
            raise ChartError(f"Expected {self.dim - 1} chart coordinates, got {c.shape[0]}.")
        return self.covector + self.frame @ c

    def from_coords(self, coords: Sequence[float]) -> ProjectivePoint:
        return ProjectivePoint(self.vector_from_coords(coords))
