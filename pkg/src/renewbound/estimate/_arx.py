import logging
import typing

import numpy as np
import pandas as pd
import statsmodels.api as sm

from renewbound._base import InputError
from renewbound.config import DEFAULT_ALPHA
from renewbound.dataio import SourceKind

from ._model import ArxFit, OuParams, coefficient_name
from ._ou import to_discrete

logger = logging.getLogger(__name__)


class InsufficientDataError(InputError):
    """
    Reports a regression that cannot be estimated from the provided data,
    due to too few observations or a rank-deficient design matrix.
    """

    pass


def fit_arx1(
    price: typing.Sequence[float],
    exogenous: typing.Mapping[SourceKind, typing.Sequence[float]],
) -> ArxFit:
    """
    Fit the ARX(1) model `X[n+1] = a + b X[n] + sum_i u_i Z_i[n] + delta eps[n]` by ordinary least squares.

    The exogenous regressors enter with the same lag as the price, i.e. at `n` rather than `n+1`.

    :param price: a sequence with `N` weekly prices.
    :param exogenous: a mapping from source kind to a sequence of `N` installed power proxy values.
    """
    x = np.asarray(price, dtype=float)
    if x.ndim != 1:
        raise ValueError("Prices must be a 1D sequence")
    kinds = [kind for kind in SourceKind if kind in exogenous]
    columns = {"a": np.ones(max(x.size - 1, 0)), "b": x[:-1]}
    for kind in kinds:
        z = np.asarray(exogenous[kind], dtype=float)
        if z.shape != x.shape:
            raise ValueError(f"{kind.value} regressor has {z.size} values but there are {x.size} prices")
        columns[coefficient_name(kind)] = z[:-1]

    k = len(columns)
    n = x.size - 1
    if n - k < 1:
        raise InsufficientDataError(
            f"insufficient observations: {x.size} prices give {n} equations for {k} coefficients"
        )
    design = pd.DataFrame(columns)
    rank = np.linalg.matrix_rank(design.to_numpy())
    if rank < k:
        raise InsufficientDataError(
            f"Rank-deficient design matrix (rank {rank} < {k}): "
            "a regressor is constant or collinear with the others"
        )

    result = sm.OLS(x[1:], design).fit()
    std_errors = result.bse
    p_values = _sanitize_p_values(result.params, std_errors, result.pvalues)

    return ArxFit(
        a=float(result.params["a"]),
        b=float(result.params["b"]),
        u={kind: float(result.params[coefficient_name(kind)]) for kind in kinds},
        delta=float(np.sqrt(max(result.scale, 0.0))),
        std_errors={name: float(std_errors[name]) for name in design.columns},
        p_values=p_values,
        residuals=np.asarray(result.resid),
        n_obs=x.size,
        covariance=np.asarray(result.cov_params()),
    )


def _sanitize_p_values(
    params: pd.Series,
    std_errors: pd.Series,
    p_values: pd.Series,
) -> typing.Mapping[str, float]:
    # A perfect fit has zero standard errors and undefined t statistics.
    sanitized = {}
    for name in params.index:
        pval = float(p_values[name])
        if std_errors[name] == 0 or not np.isfinite(pval):
            pval = 1.0 if params[name] == 0 else 0.0
        sanitized[name] = min(max(pval, 0.0), 1.0)
    return sanitized


def significance_refit(
    price: typing.Sequence[float],
    exogenous: typing.Mapping[SourceKind, typing.Sequence[float]],
    alpha: float = DEFAULT_ALPHA,
) -> typing.Tuple[ArxFit, typing.Sequence[SourceKind]]:
    """
    Fit the full model, drop the exogenous regressors with p value at or above `alpha`,
    and refit the model with the retained regressors.

    :returns: a tuple with the restricted fit and the retained source kinds.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"`alpha` must be in (0, 1) but was {alpha}")
    full = fit_arx1(price, exogenous)
    retained = tuple(kind for kind in full.u if full.p_values[coefficient_name(kind)] < alpha)
    dropped = [kind.value for kind in full.u if kind not in retained]
    if dropped:
        logger.debug("Dropping non-significant regressor(s): %s", ", ".join(dropped))

    restricted = fit_arx1(price, {kind: exogenous[kind] for kind in retained})
    return restricted, retained


def simulate_arx(
    ou: OuParams,
    exogenous: typing.Mapping[SourceKind, typing.Sequence[float]],
    x0: float,
    dt_years: float,
    rng: np.random.Generator,
    n_obs: typing.Optional[int] = None,
) -> np.ndarray:
    """
    Simulate weekly prices with the exact discretization of the impacted Ornstein-Uhlenbeck process.

    The impacting capacities are held constant between the observations.
    The returned array has the same length as the exogenous series, or `n_obs` values if there are none.
    """
    coefs = to_discrete(ou, dt_years)
    lengths = {len(z) for z in exogenous.values()}
    if n_obs is not None:
        lengths.add(n_obs)
    if len(lengths) != 1:
        raise ValueError(f"Exogenous series and `n_obs` must agree on a single length but got {sorted(lengths)}")
    n = lengths.pop()
    if n < 2:
        raise ValueError(f"At least 2 observations are needed but got {n}")

    drift = np.full(n - 1, coefs.a)
    for kind, z in exogenous.items():
        drift += coefs.u.get(kind, 0.0) * np.asarray(z, dtype=float)[:-1]
    shocks = coefs.delta * rng.standard_normal(n - 1)

    x = np.empty(n)
    x[0] = x0
    for i in range(n - 1):
        x[i + 1] = drift[i] + coefs.b * x[i] + shocks[i]
    return x
