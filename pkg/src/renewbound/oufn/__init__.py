"""
The `renewbound.oufn` package evaluates the fundamental solutions of the Ornstein-Uhlenbeck resolvent equation,
the revenue baselines, and the functions that define the free boundary.
"""

from ._params import EconParams, PsiConfig, BoundaryVariants, SIGN_CONVENTIONS, COST_NORMALIZATIONS, RHAT_Y_COEFFS
from ._psi import psi, log_psi, psi_ratios, phi, log_moment, QuadratureException, PsiOverflowException
from ._profit import r_baseline, r_hat, r_hat_unit
from ._boundary_fn import h_eval, acca_target, cost_bar, ode_rhs, ode_terms, OdeTerms, SingularRhsException

__all__ = [
    "EconParams",
    "PsiConfig",
    "BoundaryVariants",
    "SIGN_CONVENTIONS",
    "COST_NORMALIZATIONS",
    "RHAT_Y_COEFFS",
    "psi",
    "log_psi",
    "psi_ratios",
    "phi",
    "log_moment",
    "QuadratureException",
    "PsiOverflowException",
    "r_baseline",
    "r_hat",
    "r_hat_unit",
    "h_eval",
    "acca_target",
    "cost_bar",
    "ode_rhs",
    "ode_terms",
    "OdeTerms",
    "SingularRhsException",
]
