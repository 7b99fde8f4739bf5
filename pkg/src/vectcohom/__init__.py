"""Exact Chevalley-Eilenberg cohomology of polynomial vector fields on the line
with coefficients in lambda-densities, in the translation-invariant,
Euler-homogeneous subcomplex of determinant-basis cochains."""

from .coboundary import (
    DeltaMatrix,
    UnsupportedArityError,
    check_aff1_invariance,
    check_aff1_invariance_many,
    delta_matrix,
    delta_symbolic,
)
from .cochains import (
    Cochain,
    CochainBasis,
    CochainError,
    CochainParseError,
    CochainValidationError,
    canonicalize_term,
    enumerate_basis,
    parse_cochain,
    serialize_cochain,
)
from .cohomology import (
    Certificate,
    CohomologyReport,
    MembershipCheck,
    NotClosedError,
    Reduction,
    coboundary_membership,
    cohomology,
    reduce_mod_coboundaries,
    relation_in_rowspace,
    relation_vector,
)
from .exact import Polynomial, binomial, poly_derivative, poly_mul
from .linalg import ExactMatrix, image_membership, kernel_basis
from .oracle import (
    Density,
    VectorField,
    bracket,
    crosscheck_delta,
    delta_eval,
    evaluate_cochain,
    lie_derivative,
)

__version__ = "0.1.0"
