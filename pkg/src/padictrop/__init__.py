"""Exact p-adic valuation counting for sparse polynomial systems."""

from .errors import (
    DegenerateFactor,
    DomainError,
    GeneralPositionFailure,
    MonomialInput,
    NonPrime,
    NullityNotOne,
    PrecisionTooLow,
    PrimeMismatch,
    RegimeMismatch,
    TooLarge,
    UnsupportedSupportSize,
    ZeroPolynomial,
    ZeroToNegativePower,
)
from .exact_arith import INF, format_rational, ord_p, parse_rational
from .exact_linalg import gauss_jordan_system, hermite_unimodular, rref
from .multiplicity import mult_bound, multiplicity_at, sharpness_system, univariate_reduction
from .newton import newton_polygon, root_valuations, sps_product_polygon, sum_valuation_count
from .oracle import poly_from_roots, rational_roots, shub_smale_family, squarefree_part, zp_root_count
from .poly import PolySystem, SparsePoly
from .tropical import (
    intersect_many,
    intersect_plane_curves,
    plane_trop_curve,
    trop_membership,
    vert_decomposition,
)
from .valuation_count import (
    classify,
    count_n_plus_2,
    count_small_support,
    fij_reduction,
    maybetrivial_bound,
    slab_hyperplanes,
    sps_reduce,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateFactor",
    "DomainError",
    "GeneralPositionFailure",
    "MonomialInput",
    "NonPrime",
    "NullityNotOne",
    "PrecisionTooLow",
    "PrimeMismatch",
    "RegimeMismatch",
    "TooLarge",
    "UnsupportedSupportSize",
    "ZeroPolynomial",
    "ZeroToNegativePower",
    "INF",
    "format_rational",
    "ord_p",
    "parse_rational",
    "gauss_jordan_system",
    "hermite_unimodular",
    "rref",
    "mult_bound",
    "multiplicity_at",
    "sharpness_system",
    "univariate_reduction",
    "newton_polygon",
    "root_valuations",
    "sps_product_polygon",
    "sum_valuation_count",
    "poly_from_roots",
    "rational_roots",
    "shub_smale_family",
    "squarefree_part",
    "zp_root_count",
    "PolySystem",
    "SparsePoly",
    "intersect_many",
    "intersect_plane_curves",
    "plane_trop_curve",
    "trop_membership",
    "vert_decomposition",
    "classify",
    "count_n_plus_2",
    "count_small_support",
    "fij_reduction",
    "maybetrivial_bound",
    "slab_hyperplanes",
    "sps_reduce",
    "__version__",
]
