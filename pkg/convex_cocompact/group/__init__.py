from convex_cocompact.group.ball import GroupElement, MatrixGroup
from convex_cocompact.group.centralizer import (
    CentralizerSubspace,
    CharacterComponent,
    centralizer_fixed_subspace,
    joint_eigenspaces,
    simplex_edge_projection,
)
from convex_cocompact.group.limit import (
    LimitSetSample,
    boundary_orbit_density,
    cocompactness_radius,
    convex_core_approx,
    orbit_vectors,
    orbital_limit_set,
)
from convex_cocompact.group.rank_one import (
    RankOneCandidate,
    RankOneReport,
    TranslationSample,
    is_rank_one,
    minimal_translation_sample,
    rank_one_approximation,
    rank_one_elements,
)
from convex_cocompact.projlin import orbit_power_point

__all__ = [
    "GroupElement",
    "MatrixGroup",
    "LimitSetSample",
    "CentralizerSubspace",
    "CharacterComponent",
    "TranslationSample",
    "RankOneReport",
    "RankOneCandidate",
    "orbit_vectors",
    "orbital_limit_set",
    "convex_core_approx",
    "cocompactness_radius",
    "boundary_orbit_density",
    "joint_eigenspaces",
    "centralizer_fixed_subspace",
    "simplex_edge_projection",
    "minimal_translation_sample",
    "is_rank_one",
    "rank_one_approximation",
    "rank_one_elements",
    "orbit_power_point",
]
