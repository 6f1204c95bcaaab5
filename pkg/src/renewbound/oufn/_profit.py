import math

from renewbound.estimate import OuParams

from ._params import BoundaryVariants, EconParams


def _check_capacity(y: float, econ: EconParams):
    if not (math.isfinite(y) and 0.0 <= y <= econ.theta):
        raise ValueError(f"Capacity {y} must be in [0, {econ.theta}]")


def r_baseline(
    x: float,
    y: float,
    econ: EconParams,
    ou: OuParams,
    impacted: bool = True,
) -> float:
    """
    Compute the expected discounted revenue of never installing:
    `a x y / (rho + kappa) + a zeta kappa y / (rho (rho + kappa)) - a kappa beta y^2 / (rho (rho + kappa))`.

    :param x: the current price (€/MWh).
    :param y: the current capacity (MW).
    :param impacted: `False` to ignore the price impact of the capacity.
    """
    _check_capacity(y, econ)
    rho, kappa, a = econ.rho, ou.kappa, econ.conv_a
    beta = ou.impact if impacted else 0.0
    return (
        a * x * y / (rho + kappa)
        + a * ou.zeta * kappa * y / (rho * (rho + kappa))
        - a * kappa * beta * y * y / (rho * (rho + kappa))
    )


def r_hat(
    x: float,
    y: float,
    econ: EconParams,
    ou: OuParams,
    rhat_y_coeff: str = "rho_plus_2kappa",
) -> float:
    """
    Compute the marginal revenue of capacity `(a zeta kappa + a rho x - a beta C y) / (rho (rho + kappa))`,
    where `C` is `rho + 2 kappa` or `2 kappa` depending on `rhat_y_coeff`.
    """
    return econ.conv_a * r_hat_unit(x, y, econ, ou, rhat_y_coeff)


def r_hat_unit(
    x: float,
    y: float,
    econ: EconParams,
    ou: OuParams,
    rhat_y_coeff: str = "rho_plus_2kappa",
) -> float:
    """
    Compute the marginal revenue of capacity with the conversion factor set to 1,
    as it enters the boundary equations under the normalized cost.
    """
    rho, kappa = econ.rho, ou.kappa
    coef = BoundaryVariants(rhat_y_coeff=rhat_y_coeff).y_coefficient(rho, kappa)
    return (ou.zeta * kappa + rho * x - ou.impact * coef * y) / (rho * (rho + kappa))
