from convex_cocompact.domain.body import (
    ConeBody,
    ConvexBody,
    EllipsoidBody,
    FaceDescriptor,
    FaceKind,
    PolytopeBody,
    sphere_directions,
)
from convex_cocompact.domain.chart import AffineChart
from convex_cocompact.domain.construct import (
    cone_over_base,
    convex_hull_connected,
    ellipsoid_from_form,
    make_simplex,
    unit_ball,
)
from convex_cocompact.domain.metric import (
    EmbeddingCheck,
    chart_distance,
    check_automorphism,
    contains,
    cross_ratio,
    geodesic_point,
    hausdorff_distance,
    hilbert_distance,
    invariance_drift,
    is_properly_embedded,
    line_boundary_points,
    open_face,
)

__all__ = [
    "AffineChart",
    "ConvexBody",
    "PolytopeBody",
    "EllipsoidBody",
    "ConeBody",
    "FaceDescriptor",
    "FaceKind",
    "EmbeddingCheck",
    "sphere_directions",
    "contains",
    "line_boundary_points",
    "cross_ratio",
    "chart_distance",
    "hilbert_distance",
    "geodesic_point",
    "open_face",
    "is_properly_embedded",
    "hausdorff_distance",
    "invariance_drift",
    "check_automorphism",
    "make_simplex",
    "cone_over_base",
    "convex_hull_connected",
    "ellipsoid_from_form",
    "unit_ball",
]
