"""Exact ladder operators for the rationally extended oscillator built on type III
exceptional Hermite polynomials, and the 2D superintegrable systems they generate."""

from .errors import DomainError, VerificationError
from .exact_poly import ExactPoly, RationalFunction, eop_y, hermite, pseudo_hermite
from .ladder import build_ladder, ladder_coefficient_squared, pha_Q, verify_pha
from .superintegrable import (
    brute_force_spectrum,
    build_case1,
    build_case2,
    enumerate_unirreps,
    generic_unirrep_solver,
    spectrum_report,
)
from .susy import build_hat_chain, build_supercharges, verify_chain_identities
from .wavefunctions import eigenstate_prefactor, gram_matrix, norm_squared

__version__ = "0.1.0"
