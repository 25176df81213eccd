from convex_cocompact.flow.dynamics import (
    ShadowingProfile,
    TransitivityWitness,
    axis_shadowing_error,
    in_invariant_set,
    transitivity_experiment,
)
from convex_cocompact.flow.tangent import EndpointBox, UnitTangent, flow, tangent_distance, transform

__all__ = [
    "UnitTangent",
    "EndpointBox",
    "ShadowingProfile",
    "TransitivityWitness",
    "flow",
    "transform",
    "tangent_distance",
    "in_invariant_set",
    "axis_shadowing_error",
    "transitivity_experiment",
]
