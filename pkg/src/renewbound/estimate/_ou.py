import math
import typing

import numpy as np

from renewbound._base import SolverException

from ._model import ArxFit, DiscreteCoefficients, OuParams, OuStdErrors, coefficient_name


class MeanReversionException(SolverException):
    """
    Reports an estimated lag coefficient outside of `(0, 1)`,
    for which there is no mean-reverting continuous-time counterpart.
    """

    pass


def to_discrete(
    ou: OuParams,
    dt_years: float,
) -> DiscreteCoefficients:
    """
    Map the continuous parameters to the coefficients of the exact discretization with step `dt_years`.
    """
    _check_dt(dt_years)
    b = math.exp(-ou.kappa * dt_years)
    return DiscreteCoefficients(
        a=ou.zeta * (1.0 - b),
        b=b,
        u={kind: -beta * (1.0 - b) for kind, beta in ou.beta.items()},
        delta=ou.sigma * math.sqrt(-math.expm1(-2.0 * ou.kappa * dt_years) / (2.0 * ou.kappa)),
    )


def to_continuous(
    fit: typing.Union[ArxFit, DiscreteCoefficients],
    dt_years: float,
) -> OuParams:
    """
    Map the ARX(1) coefficients to the parameters of the impacted Ornstein-Uhlenbeck process.

    >>> coefs = DiscreteCoefficients(a=1.0, b=math.exp(-0.1), u={}, delta=1.0)
    >>> round(to_continuous(coefs, 1 / 52).kappa, 10)
    5.2

    :raises MeanReversionException: if `b` is not in `(0, 1)`.
    """
    _check_dt(dt_years)
    a, b, u, delta = fit.a, fit.b, fit.u, fit.delta
    _check_lag(b)

    kappa = -math.log(b) / dt_years
    return OuParams(
        kappa=kappa,
        zeta=a / (1.0 - b),
        beta={kind: -value / (1.0 - b) for kind, value in u.items()},
        sigma=delta * math.sqrt(2.0 * kappa / (1.0 - b * b)),
    )


def delta_method_se(
    fit: ArxFit,
    dt_years: float,
) -> OuStdErrors:
    """
    Propagate the OLS covariance of the ARX(1) coefficients to the continuous parameters
    with the first-order delta method.

    The standard error of `delta` is approximated by `delta / sqrt(2 (n - k))`
    and `delta` is assumed to be independent of the regression coefficients.
    """
    _check_dt(dt_years)
    _check_lag(fit.b)
    a, b = fit.a, fit.b
    names = fit.names
    cov = fit.covariance
    one_minus_b = 1.0 - b

    def propagate(gradient: typing.Mapping[str, float]) -> float:
        g = np.array([gradient.get(name, 0.0) for name in names])
        return math.sqrt(max(float(g @ cov @ g), 0.0))

    se_kappa = propagate({"b": -1.0 / (b * dt_years)})
    se_zeta = propagate({"a": 1.0 / one_minus_b, "b": a / one_minus_b**2})
    se_beta = {
        kind: propagate({coefficient_name(kind): -1.0 / one_minus_b, "b": -u / one_minus_b**2})
        for kind, u in fit.u.items()
    }

    # sigma = delta * g(b) with g(b)^2 = -2 ln(b) / (dt (1 - b^2))
    g2 = -2.0 * math.log(b) / (dt_years * (1.0 - b * b))
    g = math.sqrt(g2)
    dg2_db = (-2.0 / dt_years) * ((1.0 - b * b) / b + 2.0 * b * math.log(b)) / (1.0 - b * b) ** 2
    dg_db = dg2_db / (2.0 * g)
    var_b = cov[names.index("b"), names.index("b")]
    dof = fit.n_obs - 1 - fit.n_params
    var_delta = fit.delta**2 / (2.0 * dof)
    se_sigma = math.sqrt(max((fit.delta * dg_db) ** 2 * var_b + g2 * var_delta, 0.0))

    return OuStdErrors(kappa=se_kappa, zeta=se_zeta, beta=se_beta, sigma=se_sigma)


def _check_dt(dt_years: float):
    if not (math.isfinite(dt_years) and dt_years > 0):
        raise ValueError(f"`dt_years` must be positive but was {dt_years}")


def _check_lag(b: float):
    if b >= 1.0:
        raise MeanReversionException({"b": b}, f"no mean reversion: lag coefficient b={b} is not below 1")
    if b <= 0.0:
        raise MeanReversionException(
            {"b": b}, f"oscillatory discrete dynamics: lag coefficient b={b} is not above 0"
        )
