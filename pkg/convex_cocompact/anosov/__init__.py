from convex_cocompact.anosov.boundary import (
    BoundaryMapSample,
    ChartReport,
    CollinearityScan,
    TransversalityReport,
    boundary_map_sample,
    chart_boundedness,
    collinear_triples,
    generator_drift,
    hyperplane_separation,
    invariant_domain_from_limit,
    transversality_check,
)
from convex_cocompact.anosov.gaps import GapProfile, gap_profile, power_gaps, singular_gaps

__all__ = [
    "GapProfile",
    "BoundaryMapSample",
    "TransversalityReport",
    "ChartReport",
    "CollinearityScan",
    "gap_profile",
    "power_gaps",
    "singular_gaps",
    "boundary_map_sample",
    "transversality_check",
    "chart_boundedness",
    "invariant_domain_from_limit",
    "generator_drift",
    "hyperplane_separation",
    "collinear_triples",
]
