"""Exact arithmetic substrate: matrices, Laurent polynomials, signatures,
factorization."""

from .factor import (DEFAULT_MAX_DEGREE, Factorization, FactorizationBoundError,
                     factor_integer_poly, is_irreducible)
from .hermitian import (CirclePoint, ConditioningWarning, NonHermitianError,
                        SignatureReport, hermitian_signature, hermitian_signature_report,
                        symmetric_signature)
from .laurent import LaurentPoly1, LaurentPoly2
from .matrix import (IntMatrix, Matrix, MatrixError, RatMatrix, as_int_matrix, as_matrix,
                     solve_homogeneous)
from .ops import congruence, is_unimodular, smith_invariants, det_poly

__all__ = [
    "CirclePoint", "ConditioningWarning", "DEFAULT_MAX_DEGREE", "Factorization",
    "FactorizationBoundError", "IntMatrix", "LaurentPoly1", "LaurentPoly2", "Matrix",
    "MatrixError", "NonHermitianError", "RatMatrix", "SignatureReport", "as_int_matrix",
    "as_matrix", "congruence", "det_poly", "factor_integer_poly", "hermitian_signature",
    "hermitian_signature_report", "is_irreducible", "is_unimodular", "smith_invariants",
    "solve_homogeneous", "symmetric_signature",
]
