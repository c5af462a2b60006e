"""Orthonormal bivariate polynomials of rotation-invariant planar measures,
their two-term recurrence coefficients, truncated ladder-operator
representations of the field operator, and the factorized q-oscillator case.
"""

from .bipoly import BivariatePolynomial, inner_product, moment_functional, poly_product
from .factorize import (
    FactorizationResult,
    closed_form_alphas,
    detect_factorization,
    q_fock_operators,
    q_number,
    verify_q_relations,
)
from .ladder import (
    LadderRep,
    build_ladder_rep,
    split_phi,
    vacuum_moment,
    verify_normality_interior,
)
from .measures import (
    MeasureSpec,
    RadialMomentSequence,
    bivariate_moment,
    check_nondegenerate,
    measure_from_descriptor,
    quadrature_oracle_moments,
    radial_moments,
)
from .orthosystem import (
    AlphaTable,
    OrthonormalSystem,
    extract_alphas,
    gram_schmidt,
    sector_cholesky,
    systems_agree,
    verify_orthonormality,
    verify_recurrence,
    verify_relations,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaTable",
    "BivariatePolynomial",
    "FactorizationResult",
    "LadderRep",
    "MeasureSpec",
    "OrthonormalSystem",
    "RadialMomentSequence",
    "bivariate_moment",
    "build_ladder_rep",
    "check_nondegenerate",
    "closed_form_alphas",
    "detect_factorization",
    "extract_alphas",
    "gram_schmidt",
    "inner_product",
    "measure_from_descriptor",
    "moment_functional",
    "poly_product",
    "q_fock_operators",
    "q_number",
    "quadrature_oracle_moments",
    "radial_moments",
    "sector_cholesky",
    "split_phi",
    "systems_agree",
    "vacuum_moment",
    "verify_normality_interior",
    "verify_orthonormality",
    "verify_q_relations",
    "verify_recurrence",
    "verify_relations",
]
