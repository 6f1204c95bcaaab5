"""
The `renewbound.estimate` package fits the ARX(1) price model by ordinary least squares,
tests the residuals, and maps the coefficients to the continuous-time price parameters.
"""

from ._model import ArxFit, OuParams, OuStdErrors, BoxPierceResult, DiscreteCoefficients, coefficient_name
from ._arx import fit_arx1, significance_refit, simulate_arx, InsufficientDataError
from ._ou import to_continuous, to_discrete, delta_method_se, MeanReversionException
from ._diagnostics import box_pierce
from ._report import star_code, FitSummary, EstimationReport, summarize_fit, estimate_zone

__all__ = [
    "ArxFit",
    "OuParams",
    "OuStdErrors",
    "BoxPierceResult",
    "DiscreteCoefficients",
    "coefficient_name",
    "fit_arx1",
    "significance_refit",
    "simulate_arx",
    "InsufficientDataError",
    "to_continuous",
    "to_discrete",
    "delta_method_se",
    "MeanReversionException",
    "box_pierce",
    "star_code",
    "FitSummary",
    "EstimationReport",
    "summarize_fit",
    "estimate_zone",
]
