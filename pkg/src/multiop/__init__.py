"""Exact arithmetic for multiple orthogonal polynomials.

Type II and type I polynomials and nearest-neighbour recurrence coefficients
from moments, closed forms for five classical families, and exact checks of
the partial difference equations and the Christoffel-Darboux formula.
"""
from ._kernels import BACKEND
from .core import (
    MonicPolynomial,
    MopSystem,
    NnCoefficients,
    TypeOneVector,
    biorthogonal_pairing,
    determinant_coefficients_r2,
    moment_matrix,
    oracle_coefficients,
    second_coefficient_matrix,
    type1_vector,
    type2_polynomial,
)
from .errors import MopError
from .exact import BivariatePolynomial, RationalMatrix, determinant, solve
from .families import closed_form_coefficients
from .lattice import LatticePath, MultiIndex, enumerate_box, monotone_paths
from .moments import FamilySpec, MomentTable, build_moments, ingest_custom
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BivariatePolynomial",
    "FamilySpec",
    "LatticePath",
    "MomentTable",
    "MonicPolynomial",
    "MopError",
    "MopSystem",
    "MultiIndex",
    "NnCoefficients",
    "RationalMatrix",
    "TypeOneVector",
    "VerificationReport",
    "biorthogonal_pairing",
    "build_moments",
    "closed_form_coefficients",
    "determinant",
    "determinant_coefficients_r2",
    "enumerate_box",
    "ingest_custom",
    "moment_matrix",
    "monotone_paths",
    "oracle_coefficients",
    "run_suite",
    "second_coefficient_matrix",
    "solve",
    "type1_vector",
    "type2_polynomial",
]
