"""Properly convex bodies in an affine chart.

Every body is described by chart vectors x with <b, x> = 1 and answers three primitive queries,
from which everything else (membership, Hilbert distance, faces) is derived:

- `chord(x, u)`: the open parameter interval {t : x + t u in relint}, or None;
- `support(u)`: sup of <u, x> over the body;
- `face(x)`: the open face of a closure point.
"""
from __future__ import annotations

from typing import Optional

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.spatial import ConvexHull

from convex_cocompact.domain.chart import AffineChart
from convex_cocompact.errors import ChartError, DegeneracyError
from convex_cocompact.projlin import ProjectiveMap, ProjectivePoint, Subspace

AFFINE_TOL = 1e-9
FACE_TOL = 1e-9
MEMBERSHIP_TOL = 1e-9

Interval = Optional[tuple[float, float]]


class FaceKind(str, Enum):
    INTERIOR = "interior"
    VERTEX = "vertex"
    OPEN_FACE = "open-face"


@dataclass(frozen=True)
class FaceDescriptor:
    kind: FaceKind
    span: Subspace
    sample: ProjectivePoint


def sphere_directions(m: int, n: int) -> np.ndarray:
    """Deterministic, roughly uniform unit vectors in R^m (rows)."""
    if m == 1:
        return np.array([[1.0], [-1.0]])
    if m == 2:
        angles = 2.0 * np.pi * np.arange(n) / n
        return np.column_stack([np.cos(angles), np.sin(angles)])
    if m == 3:
        k = np.arange(n) + 0.5
        z = 1.0 - 2.0 * k / n
        phi = np.pi * (1.0 + 5**0.5) * k
        r = np.sqrt(1.0 - z**2)
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    gauss = np.random.default_rng(0).standard_normal((n, m))
    return gauss / np.linalg.norm(gauss, axis=1, keepdims=True)


class ConvexBody(ABC):
    """Abstract properly convex set, open in its span, living in an affine chart."""

    def __init__(self, chart: AffineChart) -> None:
        self.chart = chart

    @property
    def dim(self) -> int:
        """Dimension d of the ambient vector space."""
        return self.chart.dim

    @property
    @abstractmethod
    def dim_span(self) -> int:
        """Dimension of the affine span inside the chart."""
        ...

    @abstractmethod
    def interior_vector(self) -> np.ndarray:
        """A chart vector in the relative interior."""
        ...

    @abstractmethod
    def affine_frame(self) -> tuple[np.ndarray, np.ndarray]:
        """Origin chart vector and orthonormal (d, dim_span) directions of the affine span."""
        ...

    @abstractmethod
    def chord(self, x: np.ndarray, u: np.ndarray) -> Interval:
        """Open interval of t with x + t u in the relative interior, or None if empty."""
        ...

    @abstractmethod
    def support(self, u: np.ndarray) -> float:
        """Support function sup <u, x> over the body."""
        ...

    def face(self, x: np.ndarray) -> FaceDescriptor:
        """Open face of a boundary chart vector; strictly convex default."""
        p = ProjectivePoint(x)
        return FaceDescriptor(FaceKind.VERTEX, Subspace.span([x]), p)

    def transform(self, g: ProjectiveMap) -> ConvexBody:
        """Image g(body) in the same chart."""
        raise NotImplementedError(f"{type(self).__name__} does not support projective images.")

    def in_chart(self, chart: AffineChart) -> ConvexBody:
        """The same projective set described in another chart."""
        raise NotImplementedError(f"{type(self).__name__} does not support chart changes.")

    def interior_point(self) -> ProjectivePoint:
        return ProjectivePoint(self.interior_vector())

    def linear_span(self) -> Subspace:
        origin, directions = self.affine_frame()
        return Subspace.span([origin] + list(directions.T))

    def span_residual(self, x: np.ndarray) -> float:
        """Distance from a chart vector to the affine span."""
        origin, directions = self.affine_frame()
        rel = x - origin
        return float(np.linalg.norm(rel - directions @ (directions.T @ rel)))

    def _direction_in_span(self, u: np.ndarray) -> bool:
        _, directions = self.affine_frame()
        norm = np.linalg.norm(u)
        if norm == 0 or directions.shape[1] == 0:
            return False
        return bool(np.linalg.norm(u - directions @ (directions.T @ u)) <= AFFINE_TOL * norm)

    def boundary_offset(self, x: np.ndarray) -> float:
        """Signed chart distance from x to the relative boundary along the ray from the interior vector.

        Negative inside, positive outside; points off the affine span get their distance to the span.
        """
        residual = self.span_residual(x)
        if residual > AFFINE_TOL:
            return residual
        center = self.interior_vector()
        _, directions = self.affine_frame()
        if directions.shape[1] == 0:
            return 0.0
        # the center case is decided relative to the extent of the body
        axis = self.chord(center, directions[:, 0])
        inner = min(-axis[0], axis[1]) if axis else 0.0
        extent = axis[1] - axis[0] if axis and np.isfinite(axis[1] - axis[0]) else 1.0
        u = directions @ (directions.T @ (x - center))
        norm = float(np.linalg.norm(u))
        if norm <= AFFINE_TOL * max(1.0, extent):
            return -inner
        interval = self.chord(center, u)
        if interval is None:
            return -min(inner, norm)
        return float((1.0 - interval[1]) * norm)

    def contains_vector(self, x: np.ndarray, mode: str = "open", tol: float = MEMBERSHIP_TOL) -> bool:
        offset = self.boundary_offset(x)
        if mode == "open":
            return offset < -tol
        if mode == "closed":
            return offset <= tol
        raise ValueError(f"Unknown membership mode {mode!r}.")

    def boundary_sample(self, n: int = 256) -> np.ndarray:
        """Relative-boundary chart vectors hit by rays from the interior vector."""
        center = self.interior_vector()
        _, directions = self.affine_frame()
        m = directions.shape[1]
        if m == 0:
            return center[None, :]
        out = []
        for w in sphere_directions(m, n):
            u = directions @ w
            interval = self.chord(center, u)
            if interval is not None and np.isfinite(interval[1]):
                out.append(center + interval[1] * u)
        return np.array(out)

    def random_interior(self, rng: np.random.Generator, n: int, shrink: float = 0.95) -> np.ndarray:
        """n random relative-interior chart vectors (rays from the interior vector)."""
        center = self.interior_vector()
        _, directions = self.affine_frame()
        m = directions.shape[1]
        out = []
        while len(out) < n:
            u = directions @ rng.standard_normal(m)
            interval = self.chord(center, u)
            if interval is None:
                continue
            out.append(center + rng.uniform(0.0, shrink) * interval[1] * u)
        return np.array(out)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim}, dim_span={self.dim_span})"


def _relift(chart: AffineChart, vectors: np.ndarray) -> np.ndarray:
    """Chart vectors of projective images, requiring all of them on one side of the chart's infinity."""
    pair = vectors @ chart.covector
    if np.any(np.abs(pair) <= 1e-12) or not (np.all(pair > 0) or np.all(pair < 0)):
        raise ChartError("The image is not contained in the chart.")
    return vectors / pair[:, None]


class PolytopeBody(ConvexBody):
    """Relative interior of the convex hull of finitely many chart vectors (exact facet clipping)."""

    def __init__(self, chart: AffineChart, vectors: np.ndarray) -> None:
        super().__init__(chart)
        pts = np.atleast_2d(np.asarray(vectors, dtype=float))
        if pts.shape[1] != chart.dim:
            raise DegeneracyError(f"Expected vectors of length {chart.dim}, got {pts.shape[1]}.")
        origin = pts.mean(axis=0)
        centered = pts - origin
        _, s, vt = np.linalg.svd(centered, full_matrices=False)
        scale = max(1.0, float(np.abs(pts).max()))
        m = int(np.sum(s > AFFINE_TOL * scale))
        frame = vt[:m].T
        local = centered @ frame
        if m >= 2:
            hull = ConvexHull(local)
            idx = np.sort(hull.vertices)
            equations = np.unique(np.round(hull.equations, 10), axis=0)
        elif m == 1:
            lo, hi = int(np.argmin(local[:, 0])), int(np.argmax(local[:, 0]))
            idx = np.array(sorted({lo, hi}))
            equations = np.array([[1.0, -local[hi, 0]], [-1.0, local[lo, 0]]])
        else:
            idx = np.array([0])
            equations = np.zeros((0, 1))
        self._m = m
        self._origin = pts[idx].mean(axis=0)
        self._frame = frame
        self._base = origin
        self.vertices = pts[idx]
        self._local_vertices = local[idx]
        self._normals = equations[:, :m]
        self._offsets = equations[:, m]

    @property
    def dim_span(self) -> int:
        return self._m

    def interior_vector(self) -> np.ndarray:
        return self._origin

    def affine_frame(self) -> tuple[np.ndarray, np.ndarray]:
        return self._base, self._frame

    def vertex_points(self) -> list[ProjectivePoint]:
        return [ProjectivePoint(v) for v in self.vertices]

    def _local(self, x: np.ndarray) -> np.ndarray:
        return (x - self._base) @ self._frame

    def chord(self, x: np.ndarray, u: np.ndarray) -> Interval:
        if self._m == 0 or self.span_residual(x) > AFFINE_TOL or not self._direction_in_span(u):
            return None
        y0 = self._local(x)
        du = u @ self._frame
        rate = self._normals @ du
        value = self._normals @ y0 + self._offsets
        eps = 1e-15 * np.linalg.norm(du)
        lo, hi = -np.inf, np.inf
        ahead = rate > eps
        behind = rate < -eps
        if np.any(ahead):
            hi = float(np.min(-value[ahead] / rate[ahead]))
        if np.any(behind):
            lo = float(np.max(-value[behind] / rate[behind]))
        parallel = ~(ahead | behind)
        if np.any(value[parallel] >= 0) or lo >= hi:
            return None
        return lo, hi

    def support(self, u: np.ndarray) -> float:
        return float(np.max(self.vertices @ u))

    def face(self, x: np.ndarray) -> FaceDescriptor:
        sample = ProjectivePoint(x)
        if self._m == 0:
            return FaceDescriptor(FaceKind.VERTEX, Subspace.span([self.vertices[0]]), sample)
        values = self._normals @ self._local(x) + self._offsets
        active = np.abs(values) <= FACE_TOL
        if not np.any(active):
            return FaceDescriptor(FaceKind.INTERIOR, self.linear_span(), sample)
        slack = self._local_vertices @ self._normals[active].T + self._offsets[active]
        on_face = np.all(np.abs(slack) <= FACE_TOL, axis=1)
        members = self.vertices[on_face]
        kind = FaceKind.VERTEX if len(members) == 1 else FaceKind.OPEN_FACE
        return FaceDescriptor(kind, Subspace.span(list(members)), sample)

    def transform(self, g: ProjectiveMap) -> PolytopeBody:
        return PolytopeBody(self.chart, _relift(self.chart, g.apply(self.vertices)))

    def in_chart(self, chart: AffineChart) -> PolytopeBody:
        return PolytopeBody(chart, _relift(chart, self.vertices))


class EllipsoidBody(ConvexBody):
    """{center + axes @ y : |y| < 1} with the axis columns in b^perp."""

    def __init__(self, chart: AffineChart, center: np.ndarray, axes: np.ndarray) -> None:
        super().__init__(chart)
        b = chart.covector
        center = np.asarray(center, dtype=float)
        center = center / (b @ center)
        axes = np.asarray(axes, dtype=float)
        if axes.ndim == 1:
            axes = axes[:, None]
        axes = axes - np.outer(b, b @ axes)
        s = np.linalg.svd(axes, compute_uv=False)
        if s.size == 0 or s[-1] <= 1e-12 * max(s[0], 1e-300):
            raise DegeneracyError("Ellipsoid axes are linearly dependent.")
        self.center = center
        self.axes = axes
        self._pinv = np.linalg.pinv(axes)
        self._frame = np.linalg.qr(axes)[0]

    @classmethod
    def from_form(cls, form: np.ndarray, chart: AffineChart) -> EllipsoidBody:
        """The component {x^T S x < 0} of a quadric, required to be a bounded ellipsoid in `chart`."""
        S = np.asarray(form, dtype=float)
        S = 0.5 * (S + S.T)
        b, U = chart.covector, chart.frame
        M = U.T @ S @ U
        g = U.T @ S @ b
        c0 = b @ S @ b
        evals = np.linalg.eigvalsh(M)
        if np.all(evals < 0):
            M, g, c0 = -M, -g, -c0
        elif not np.all(evals > 0):
            raise DegeneracyError("The quadric does not cut an ellipsoid out of this chart.")
        shift = np.linalg.solve(M, g)
        rho = g @ shift - c0
        if rho <= 0:
            raise DegeneracyError("The quadric has no interior points in this chart.")
        evals, evecs = np.linalg.eigh(M)
        axes = U @ evecs @ np.diag(np.sqrt(rho / evals))
        return cls(chart, b - U @ shift, axes)

    @property
    def dim_span(self) -> int:
        return int(self.axes.shape[1])

    def interior_vector(self) -> np.ndarray:
        return self.center

    def affine_frame(self) -> tuple[np.ndarray, np.ndarray]:
        return self.center, self._frame

    def local_coords(self, x: np.ndarray) -> np.ndarray:
        return self._pinv @ (x - self.center)

    def chord(self, x: np.ndarray, u: np.ndarray) -> Interval:
        if self.span_residual(x) > AFFINE_TOL or not self._direction_in_span(u):
            return None
        y0 = self.local_coords(x)
        w = self._pinv @ u
        a = w @ w
        b = 2.0 * (y0 @ w)
        c = y0 @ y0 - 1.0
        disc = b * b - 4.0 * a * c
        if a <= 0 or disc <= 0:
            return None
        q = -0.5 * (b + np.copysign(np.sqrt(disc), b))
        lo, hi = sorted([q / a, c / q])
        return float(lo), float(hi)

    def support(self, u: np.ndarray) -> float:
        return float(u @ self.center + np.linalg.norm(self.axes.T @ u))

    def quadratic_form(self) -> np.ndarray:
        """S with interior = {x^T S x < 0}, for full-dimensional ellipsoids."""
        if self.dim_span != self.dim - 1:
            raise DegeneracyError("Only full-dimensional ellipsoids have a defining form.")
        b = self.chart.covector
        M = self._pinv @ (np.eye(self.dim) - np.outer(self.center, b))
        return M.T @ M - np.outer(b, b)

    def transform(self, g: ProjectiveMap) -> EllipsoidBody:
        inv = np.linalg.inv(g.lift)
        return EllipsoidBody.from_form(inv.T @ self.quadratic_form() @ inv, self.chart)

    def in_chart(self, chart: AffineChart) -> EllipsoidBody:
        if self.dim_span != self.dim - 1:
            raise NotImplementedError("Chart changes are implemented for full-dimensional ellipsoids only.")
        return EllipsoidBody.from_form(self.quadratic_form(), chart)


class ConeBody(ConvexBody):
    """Relative interior of the hull of an apex and an ellipsoidal base.

    A chart vector decomposes as p = apex + s (base.center - apex) + base.axes z and lies in the
    open cone iff 0 < s < 1 and |z| < s.
    """

    def __init__(self, chart: AffineChart, apex: np.ndarray, base: EllipsoidBody) -> None:
        super().__init__(chart)
        if not base.chart.same_as(chart):
            raise ChartError("Cone apex and base must be given in the same chart.")
        apex = np.asarray(apex, dtype=float)
        self.apex = apex / (chart.covector @ apex)
        self.base = base
        basis = np.column_stack([base.center - self.apex, base.axes])
        s = np.linalg.svd(basis, compute_uv=False)
        if s[-1] <= 1e-10 * s[0]:
            raise DegeneracyError("Cone apex lies in the affine span of its base.")
        self._pinv = np.linalg.pinv(basis)
        self._frame = np.linalg.qr(basis)[0]

    @property
    def dim_span(self) -> int:
        return self.base.dim_span + 1

    def interior_vector(self) -> np.ndarray:
        return 0.5 * (self.apex + self.base.center)

    def affine_frame(self) -> tuple[np.ndarray, np.ndarray]:
        return self.apex, self._frame

    def cone_coords(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        coeffs = self._pinv @ (x - self.apex)
        return float(coeffs[0]), coeffs[1:]

    def _inside(self, s: float, z: np.ndarray) -> bool:
        return 0.0 < s < 1.0 and float(z @ z) < s * s

    def chord(self, x: np.ndarray, u: np.ndarray) -> Interval:
        if self.span_residual(x) > AFFINE_TOL or not self._direction_in_span(u):
            return None
        s0, z0 = self.cone_coords(x)
        c1 = self._pinv @ u
        s1, z1 = float(c1[0]), c1[1:]
        breaks = []
        if s1 != 0:
            breaks += [-s0 / s1, (1.0 - s0) / s1]
        a = z1 @ z1 - s1 * s1
        b = 2.0 * (z0 @ z1 - s0 * s1)
        c = z0 @ z0 - s0 * s0
        if abs(a) > 1e-300:
            disc = b * b - 4.0 * a * c
            if disc >= 0:
                q = -0.5 * (b + np.copysign(np.sqrt(disc), b))
                breaks.append(q / a)
                if q != 0:
                    breaks.append(c / q)
        elif b != 0:
            breaks.append(-c / b)
        pts = sorted(set(float(t) for t in breaks if np.isfinite(t)))
        if not pts:
            return None
        edges = [pts[0] - 1.0] + pts + [pts[-1] + 1.0]
        mids = [0.5 * (lo + hi) for lo, hi in zip(edges, edges[1:])]
        member = [self._inside(s0 + m * s1, z0 + m * z1) for m in mids]
        if not any(member):
            return None
        first = member.index(True)
        last = len(member) - 1 - member[::-1].index(True)
        lo = edges[first] if first > 0 else -np.inf
        hi = edges[last + 1] if last + 1 < len(edges) - 1 else np.inf
        return lo, hi

    def support(self, u: np.ndarray) -> float:
        return max(float(u @ self.apex), self.base.support(u))

    def face(self, x: np.ndarray) -> FaceDescriptor:
        sample = ProjectivePoint(x)
        s, z = self.cone_coords(x)
        if abs(s) <= FACE_TOL:
            return FaceDescriptor(FaceKind.VERTEX, Subspace.span([self.apex]), sample)
        radius = float(np.linalg.norm(z)) / s
        rim = abs(radius - 1.0) <= FACE_TOL
        if abs(s - 1.0) <= FACE_TOL:
            if rim:
                return FaceDescriptor(FaceKind.VERTEX, Subspace.span([x]), sample)
            return FaceDescriptor(FaceKind.OPEN_FACE, self.base.linear_span(), sample)
        if rim:
            foot = self.base.center + self.base.axes @ (z / s)
            return FaceDescriptor(FaceKind.OPEN_FACE, Subspace.span([self.apex, foot]), sample)
        return FaceDescriptor(FaceKind.INTERIOR, self.linear_span(), sample)
