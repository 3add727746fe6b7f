"""Root distribution of polynomials with generating function 1/(1 + B(z) t + A(z) t^n)."""

__version__ = "0.1.0"

from .poly import ComplexPolynomial, chebyshev_u, discriminant, sylvester_resultant
from .genfun import TrinomialFamily, h_roots, h_sequence, series_oracle
from .rootfind import RootSet, SolverOptions, find_roots
from .curves import LocusReport, LocusSpec, verify_theorem

__all__ = [
    "ComplexPolynomial",
    "chebyshev_u",
    "discriminant",
    "sylvester_resultant",
    "TrinomialFamily",
    "h_roots",
    "h_sequence",
    "series_oracle",
    "RootSet",
    "SolverOptions",
    "find_roots",
    "LocusReport",
    "LocusSpec",
    "verify_theorem",
]
