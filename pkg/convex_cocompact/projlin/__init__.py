from convex_cocompact.projlin.maps import (
    EndomorphismClass,
    ProjectiveMap,
    apply_endo,
    canonical_lift,
    projective_difference,
    sequence_limit,
)
from convex_cocompact.projlin.points import (
    ProjectivePoint,
    Subspace,
    angular_distance,
    canonical_sign,
    hyperplane,
    hyperplane_normal,
)
from convex_cocompact.projlin.spectral import (
    ProximalData,
    classify_proximal,
    eigenvalue_moduli,
    orbit_power_point,
    power_limit,
    singular_values,
    translation_length,
)

__all__ = [
    "ProjectivePoint",
    "Subspace",
    "ProjectiveMap",
    "EndomorphismClass",
    "ProximalData",
    "angular_distance",
    "canonical_sign",
    "canonical_lift",
    "projective_difference",
    "hyperplane",
    "hyperplane_normal",
    "apply_endo",
    "sequence_limit",
    "eigenvalue_moduli",
    "singular_values",
    "classify_proximal",
    "power_limit",
    "orbit_power_point",
    "translation_length",
]
