import math
import typing

from renewbound._base import SolverException
from renewbound.estimate import OuParams

from ._params import EconParams, PsiConfig
from ._profit import r_hat_unit
from ._psi import psi_ratios

SINGULAR_TOL = 1e-12


class SingularRhsException(SolverException):
    """
    Reports a vanishing denominator of the boundary ODE.
    """

    pass


def _boundary_cost(econ: EconParams, config: PsiConfig) -> float:
    return config.variants.cost(econ)


def cost_bar(
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
) -> float:
    """
    Compute `c_bar = c (rho + kappa) - (zeta kappa - beta C theta) / rho`,
    the price at which the marginal revenue at full capacity equals the cost.
    """
    config.check_matches(econ, ou)
    rho, kappa = econ.rho, ou.kappa
    coef = config.variants.y_coefficient(rho, kappa)
    return _boundary_cost(econ, config) * (rho + kappa) - (ou.zeta * kappa - ou.impact * coef * econ.theta) / rho


def h_eval(
    x: float,
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
) -> float:
    """
    Compute `H(x) = c (rho + kappa) - zeta kappa / rho + psi(x) / psi'(x) - x`,
    whose unique root is the constant boundary of the problem without price impact.

    `H` is strictly decreasing.
    """
    config.check_matches(econ, ou)
    if ou.impact != 0.0:
        raise ValueError(f"`h_eval` needs parameters without price impact but beta={ou.impact}")
    r = psi_ratios(x, config, max_order=1)
    rho, kappa = econ.rho, ou.kappa
    return _boundary_cost(econ, config) * (rho + kappa) - ou.zeta * kappa / rho + 1.0 / r[1] - x


def acca_target(
    x: float,
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
) -> float:
    """
    Compute `(rho + kappa) (c - R1(x, theta)) + psi(x) / psi'(x)`, whose root is the terminal boundary value.

    `R1` is the marginal revenue with the conversion factor set to 1.
    Without price impact the target coincides with :func:`h_eval`.
    """
    config.check_matches(econ, ou)
    r = psi_ratios(x, config, max_order=1)
    rho, kappa = econ.rho, ou.kappa
    gap = _boundary_cost(econ, config) - r_hat_unit(x, econ.theta, econ, ou, config.variants.rhat_y_coeff)
    return (rho + kappa) * gap + 1.0 / r[1]


class OdeTerms(typing.NamedTuple):
    """
    Numerator and denominator of the boundary ODE, both divided by `psi(fhat)^3`.
    """

    numerator: float
    denominator: float
    wronskian: float
    """
    `psi psi'' - psi'^2`, divided by `psi^2`.
    """


def ode_terms(
    y: float,
    fhat: float,
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
) -> OdeTerms:
    """
    Compute the `N` and `D` terms of the boundary ODE `F_hat'(y) = beta N / D` at `(y, fhat)`.

    The terms are scaled by `psi(fhat)^3` and use the derivative ratios of :func:`psi_ratios`,
    so they stay finite where `psi` itself overflows.
    """
    config.check_matches(econ, ou)
    rho, kappa = econ.rho, ou.kappa
    _, r1, r2, r3 = psi_ratios(fhat, config, max_order=3)
    gap = _boundary_cost(econ, config) - r_hat_unit(fhat, y, econ, ou, config.variants.rhat_y_coeff)
    coef = config.variants.y_coefficient(rho, kappa)

    wronskian = r2 - r1 * r1
    numerator = wronskian * ((coef / rho) * r1 + (rho + kappa) * gap * r2 + r1)
    denominator = (rho + kappa) * gap * (r1 * r3 - r2 * r2) + r3 - r1 * r2
    return OdeTerms(numerator=numerator, denominator=denominator, wronskian=wronskian)


def ode_rhs(
    y: float,
    fhat: float,
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
) -> float:
    """
    Compute the right-hand side `beta N(y, fhat) / D(y, fhat)` of the boundary ODE.

    :raises SingularRhsException: if the denominator vanishes.
    """
    beta = ou.impact
    if beta == 0.0:
        return 0.0
    terms = ode_terms(y, fhat, econ, ou, config)
    if not (math.isfinite(terms.numerator) and math.isfinite(terms.denominator)):
        raise SingularRhsException(
            {"y": y, "fhat": fhat, "numerator": terms.numerator, "denominator": terms.denominator},
            f"Non-finite ODE terms at y={y}, fhat={fhat}",
        )
    if abs(terms.denominator) <= SINGULAR_TOL:
        raise SingularRhsException(
            {"y": y, "fhat": fhat, "denominator": terms.denominator},
            f"Singular ODE right-hand side at y={y}, fhat={fhat} (D={terms.denominator:.3e})",
        )
    return beta * terms.numerator / terms.denominator
