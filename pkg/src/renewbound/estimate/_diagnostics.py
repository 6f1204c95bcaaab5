import typing

import numpy as np

from statsmodels.stats.diagnostic import acorr_ljungbox

from renewbound.config import DEFAULT_BOX_PIERCE_LAGS

from ._model import BoxPierceResult


def box_pierce(
    residuals: typing.Sequence[float],
    lags: int = DEFAULT_BOX_PIERCE_LAGS,
    ljung_box: bool = False,
) -> BoxPierceResult:
    """
    Test the serial independence of the `residuals` with the Box-Pierce statistic
    `Q = n * sum_{k=1..h} r_k^2`, where `r_k` is the lag-`k` sample autocorrelation,
    against the chi-squared distribution with `h` degrees of freedom.

    Rejecting the independence for small p values is left to the caller.

    :param residuals: a sequence of `n` residuals.
    :param lags: the number of lags `h`, `1 <= h < n`.
    :param ljung_box: `True` for the small-sample (Ljung-Box) correction of the statistic.
    """
    resid = np.asarray(residuals, dtype=float)
    if not isinstance(lags, (int, np.integer)) or lags < 1:
        raise ValueError(f"`lags` must be a positive `int` but was {lags}")
    if lags >= resid.size:
        raise ValueError(f"`lags` ({lags}) must be less than the number of residuals ({resid.size})")
    if not np.all(np.isfinite(resid)):
        raise ValueError("Residuals must be finite")
    if np.all(resid == resid[0]):
        raise ValueError("Residuals have zero variance, the autocorrelation is undefined")

    result = acorr_ljungbox(resid, lags=[int(lags)], boxpierce=True)
    row = result.iloc[-1]
    if ljung_box:
        statistic, pval = row["lb_stat"], row["lb_pvalue"]
    else:
        statistic, pval = row["bp_stat"], row["bp_pvalue"]

    return BoxPierceResult(
        statistic=max(float(statistic), 0.0),
        lags=int(lags),
        p_value=min(max(float(pval), 0.0), 1.0),
    )
