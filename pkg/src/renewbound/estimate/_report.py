import dataclasses
import logging
import typing

from renewbound.config import DEFAULT_ALPHA, DEFAULT_BOX_PIERCE_LAGS, DEFAULT_DT_YEARS
from renewbound.dataio import AlignedSeries, SourceKind

from ._arx import fit_arx1, significance_refit
from ._diagnostics import box_pierce
from ._model import ArxFit, BoxPierceResult, OuParams, OuStdErrors
from ._ou import MeanReversionException, delta_method_se, to_continuous

logger = logging.getLogger(__name__)


def star_code(pval: float) -> str:
    """
    Get the significance stars of a p value.

    >>> [star_code(p) for p in (0.001, 0.02, 0.07, 0.5)]
    ['***', '**', '*', '']
    """
    if pval < 0.01:
        return "***"
    elif pval < 0.05:
        return "**"
    elif pval < 0.1:
        return "*"
    return ""


@dataclasses.dataclass(frozen=True)
class FitSummary:
    """
    One ARX(1) fit along with its residual diagnostics and the continuous parameters, if available.
    """

    fit: ArxFit
    box_pierce: BoxPierceResult
    ou: typing.Optional[OuParams]
    """
    Continuous parameters or `None` if the lag coefficient admits no mean-reverting counterpart.
    """
    ou_std_errors: typing.Optional[OuStdErrors]


@dataclasses.dataclass(frozen=True)
class EstimationReport:
    """
    `EstimationReport` includes the full-model fit, the significance-restricted refit,
    and the retained regressors of a zone.
    """

    zone: str
    dt_years: float
    alpha: float
    full: FitSummary
    restricted: FitSummary
    retained: typing.Sequence[SourceKind]

    @property
    def passes_box_pierce(self) -> bool:
        """
        Test if the full-model residuals pass the Box-Pierce test at the 5% level.
        """
        return not self.full.box_pierce.rejects(0.05)

    def restricted_ou(self) -> OuParams:
        """
        Get the continuous parameters of the restricted fit.

        :raises MeanReversionException: if the restricted fit is not mean-reverting.
        """
        if self.restricted.ou is None:
            raise MeanReversionException(
                {"zone": self.zone, "b": self.restricted.fit.b},
                f"Restricted fit of {self.zone} has no mean reversion (b={self.restricted.fit.b})",
            )
        return self.restricted.ou


def summarize_fit(
    fit: ArxFit,
    dt_years: float = DEFAULT_DT_YEARS,
    lags: int = DEFAULT_BOX_PIERCE_LAGS,
    ljung_box: bool = False,
) -> FitSummary:
    bp = box_pierce(fit.residuals, lags=lags, ljung_box=ljung_box)
    try:
        ou = to_continuous(fit, dt_years)
        se = delta_method_se(fit, dt_years)
    except MeanReversionException as e:
        logger.warning("No continuous-time parameters: %s", e)
        ou, se = None, None
    return FitSummary(fit=fit, box_pierce=bp, ou=ou, ou_std_errors=se)


def estimate_zone(
    zone: str,
    aligned: AlignedSeries,
    dt_years: float = DEFAULT_DT_YEARS,
    alpha: float = DEFAULT_ALPHA,
    lags: int = DEFAULT_BOX_PIERCE_LAGS,
    ljung_box: bool = False,
) -> EstimationReport:
    """
    Fit the full model with both regressors, then refit with the significant regressors only.
    """
    exogenous = aligned.exogenous()
    full = fit_arx1(aligned.prices, exogenous)
    restricted, retained = significance_refit(aligned.prices, exogenous, alpha=alpha)
    full_summary = summarize_fit(full, dt_years, lags, ljung_box)
    if full_summary.box_pierce.rejects(0.05):
        logger.warning(
            "Residuals of %s fail the Box-Pierce test (Q=%.3f, p=%.4f): the ARX(1) model may be inadequate",
            zone,
            full_summary.box_pierce.statistic,
            full_summary.box_pierce.p_value,
        )

    return EstimationReport(
        zone=zone,
        dt_years=dt_years,
        alpha=alpha,
        full=full_summary,
        restricted=summarize_fit(restricted, dt_years, lags, ljung_box),
        retained=retained,
    )
