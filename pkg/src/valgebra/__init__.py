"""Exact rational computations with convex polytopes and their valuations.

The package computes convex hulls, volumes, polynomial integrals, mixed
volumes, products of valuations, filtration levels and structure constants
over exact rational arithmetic.  Floating point only ever enters through
two-sided interval brackets around ball-dependent quantities.
"""

from fractions import Fraction

from .geometry import (
    LinearMap,
    Polytope,
    hull,
    minkowski_sum,
    scale,
    translate,
    reflect,
    cartesian_product,
    diagonal_embed,
    support,
    volume,
    affine_dim,
    hausdorff_distance,
    ball_approx,
)
from .polynomials import Polynomial, integrate, integrate_simplex
from .intervals import Interval
from .mixed import (
    mixed_volume,
    minkowski_polynomial,
    MinkowskiPolynomial,
    derivative_at_zero,
    steiner_coeffs,
    intrinsic_volume_brackets,
    projection_identity_check,
)
from .valuations import (
    MVGenerator,
    PDGenerator,
    EulerGenerator,
    ProductGenerator,
    Valuation,
    evaluate,
    exterior_product,
    diagonal_product_evaluate,
    product,
    closed_form_product,
    odd_product_witness,
    homogeneous_decomposition,
    parity_decomposition,
    pairing_matrix,
    translation_profile,
    valuation_axiom_check,
)
from .filtration import (
    scaling_profile,
    vanishing_membership,
    scaling_membership,
    symbol,
    symbol_homomorphism_check,
    filtration_report,
)
from .invariants import (
    intrinsic_basis,
    structure_constants,
    truncated_poly_check,
    restriction,
    stable_iso_check,
    unitary_dimension,
    lefschetz_check,
)

__all__ = [
    "Fraction",
    "LinearMap",
    "Polytope",
    "hull",
    "minkowski_sum",
    "scale",
    "translate",
    "reflect",
    "cartesian_product",
    "diagonal_embed",
    "support",
    "volume",
    "affine_dim",
    "hausdorff_distance",
    "ball_approx",
    "Polynomial",
    "integrate",
    "integrate_simplex",
    "Interval",
    "mixed_volume",
    "minkowski_polynomial",
    "MinkowskiPolynomial",
    "derivative_at_zero",
    "steiner_coeffs",
    "intrinsic_volume_brackets",
    "projection_identity_check",
    "MVGenerator",
    "PDGenerator",
    "EulerGenerator",
    "ProductGenerator",
    "Valuation",
    "evaluate",
    "exterior_product",
    "diagonal_product_evaluate",
    "product",
    "closed_form_product",
    "odd_product_witness",
    "homogeneous_decomposition",
    "parity_decomposition",
    "pairing_matrix",
    "translation_profile",
    "valuation_axiom_check",
    "scaling_profile",
    "vanishing_membership",
    "scaling_membership",
    "symbol",
    "symbol_homomorphism_check",
    "filtration_report",
    "intrinsic_basis",
    "structure_constants",
    "truncated_poly_check",
    "restriction",
    "stable_iso_check",
    "unitary_dimension",
    "lefschetz_check",
]

__version__ = "0.1.0"
