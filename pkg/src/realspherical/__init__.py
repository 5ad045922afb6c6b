"""Structure invariants of real spherical spaces in exact arithmetic.

The exact layer (:mod:`rootsys`, :mod:`cones`, :mod:`spherical`,
:mod:`integrability`) works with :class:`fractions.Fraction`; the
:mod:`numerics` subpackage checks asymptotic statements on explicit matrix
realizations in floating point.
"""
from .catalog import catalog, catalog_names
from .cones import (
    Cone,
    Lattice,
    SumReport,
    Subspace,
    dual_cone,
    edge_and_rays,
    lattice_points,
    project_quotient,
    weighted_cone_sum,
)
from .integrability import (
    ExponentProfile,
    FactorizationRecord,
    WeightList,
    coefficient_bound,
    enumerate_factorizations,
    is_interior_dual,
    lambda_V,
    lifted_exponent,
    lp_threshold,
    property_I_check,
)
from .rootsys import RootDatum, direct_sum, dual_basis, negative_chamber, standard_datum
from .spherical import (
    SphericalDescriptor,
    StructureReport,
    compression_cone,
    is_wavefront,
    quasiaffine_extension,
    rank_and_edge,
    rho_u,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "ExponentProfile",
    "FactorizationRecord",
    "Lattice",
    "RootDatum",
    "SphericalDescriptor",
    "StructureReport",
    "Subspace",
    "SumReport",
    "WeightList",
    "catalog",
    "catalog_names",
    "coefficient_bound",
    "compression_cone",
    "direct_sum",
    "dual_basis",
    "dual_cone",
    "edge_and_rays",
    "enumerate_factorizations",
    "is_interior_dual",
    "is_wavefront",
    "lambda_V",
    "lattice_points",
    "lifted_exponent",
    "lp_threshold",
    "negative_chamber",
    "project_quotient",
    "property_I_check",
    "quasiaffine_extension",
    "rank_and_edge",
    "rho_u",
    "standard_datum",
    "validate",
    "weighted_cone_sum",
]
