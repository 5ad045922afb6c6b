"""Floating-point checks on explicit matrix realizations of catalog spaces."""
from .realizations import MatrixRealization, realization, realization_names
from .decompositions import iwasawa, polar_coordinate
from .structure import (
    grassmann_distance,
    limit_subalgebra,
    sphericality_check,
    subalgebra_limit_scan,
    unimodularity_check,
)
from .volume import (
    BallSpec,
    NonConvergenceError,
    WeightSample,
    ball_volume,
    growth_scan,
    sup_weight,
    weights_at,
)
from .seminorms import RadialProfile, schwartz_seminorms, standard_profiles

__all__ = [
    "MatrixRealization",
    "realization",
    "realization_names",
    "iwasawa",
    "polar_coordinate",
    "grassmann_distance",
    "limit_subalgebra",
    "sphericality_check",
    "subalgebra_limit_scan",
    "unimodularity_check",
    "BallSpec",
    "NonConvergenceError",
    "WeightSample",
    "ball_volume",
    "growth_scan",
    "sup_weight",
    "weights_at",
    "RadialProfile",
    "schwartz_seminorms",
    "standard_profiles",
]
