import dataclasses
import math
import typing

import numpy as np

from renewbound.dataio import SourceKind


def coefficient_name(kind: SourceKind) -> str:
    """
    Get the name of the exogenous coefficient of the source `kind`.

    >>> coefficient_name(SourceKind.WIND)
    'u_wind'
    """
    return f"u_{kind.value}"


class DiscreteCoefficients(typing.NamedTuple):
    """
    Coefficients of the ARX(1) model `X[n+1] = a + b X[n] + sum_i u_i Z_i[n] + delta eps[n]`.
    """

    a: float
    b: float
    u: typing.Mapping[SourceKind, float]
    delta: float


@dataclasses.dataclass(frozen=True)
class ArxFit:
    """
    `ArxFit` is the ordinary least squares fit of the ARX(1) price model.

    The standard errors and p values are keyed by coefficient names
    (`a`, `b`, and `u_<source kind>` for the exogenous regressors).
    """

    a: float
    b: float
    u: typing.Mapping[SourceKind, float]
    delta: float
    """
    Residual standard deviation `sqrt(SSR / (n - k))`.
    """
    std_errors: typing.Mapping[str, float]
    p_values: typing.Mapping[str, float]
    residuals: typing.Sequence[float]
    """
    One-step-ahead residuals in €/MWh.
    """
    n_obs: int
    """
    Number of price observations, one more than the number of residuals.
    """
    covariance: np.ndarray = dataclasses.field(compare=False, repr=False)
    """
    Classical OLS covariance of the coefficients, ordered as :attr:`names`.
    """

    def __post_init__(self):
        object.__setattr__(self, "u", dict(self.u))
        object.__setattr__(self, "std_errors", dict(self.std_errors))
        object.__setattr__(self, "p_values", dict(self.p_values))
        object.__setattr__(self, "residuals", tuple(float(r) for r in self.residuals))

        if not self.delta >= 0:
            raise ValueError(f"`delta` must be non-negative but was {self.delta}")
        if len(self.residuals) != self.n_obs - 1:
            raise ValueError(f"Expected {self.n_obs - 1} residuals but got {len(self.residuals)}")
        names = self.names
        for name in names:
            se = self.std_errors[name]
            if not se >= 0:
                raise ValueError(f"Standard error of `{name}` must be non-negative but was {se}")
            pval = self.p_values[name]
            if not 0.0 <= pval <= 1.0:
                raise ValueError(f"p value of `{name}` must be in [0, 1] but was {pval}")
        if self.covariance.shape != (len(names), len(names)):
            raise ValueError(f"Covariance shape {self.covariance.shape} does not match {len(names)} coefficients")

    @property
    def names(self) -> typing.Sequence[str]:
        """
        Get the coefficient names in the order of the design matrix columns.
        """
        return ("a", "b") + tuple(coefficient_name(kind) for kind in self.u)

    @property
    def n_params(self) -> int:
        return 2 + len(self.u)

    @property
    def coefficients(self) -> DiscreteCoefficients:
        return DiscreteCoefficients(a=self.a, b=self.b, u=dict(self.u), delta=self.delta)

    @property
    def standardized_residuals(self) -> np.ndarray:
        """
        Get residuals divided by :attr:`delta` (or the raw residuals if `delta` is zero).
        """
        residuals = np.array(self.residuals)
        return residuals / self.delta if self.delta > 0 else residuals

    def value_of(self, name: str) -> float:
        if name == "a":
            return self.a
        elif name == "b":
            return self.b
        for kind, value in self.u.items():
            if coefficient_name(kind) == name:
                return value
        raise ValueError(f"Unknown coefficient `{name}`")


@dataclasses.dataclass(frozen=True)
class OuParams:
    """
    Parameters of the impacted Ornstein-Uhlenbeck price `dX = kappa (zeta - sum_i beta_i Y_i - X) dt + sigma dW`.

    The impact slopes are reported as estimated; the control problem additionally
    requires a single non-negative slope (see :attr:`impact`).
    """

    kappa: float
    """
    Mean-reversion speed (1/year).
    """
    zeta: float
    """
    Long-run mean (€/MWh).
    """
    beta: typing.Mapping[SourceKind, float]
    """
    Impact slope per source kind (€/MWh per MW).
    """
    sigma: float
    """
    Volatility (€/MWh per sqrt(year)).
    """

    def __post_init__(self):
        object.__setattr__(self, "beta", dict(self.beta))
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise ValueError(f"`kappa` must be positive but was {self.kappa}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"`sigma` must be positive but was {self.sigma}")
        if not math.isfinite(self.zeta):
            raise ValueError(f"`zeta` must be finite but was {self.zeta}")
        for kind, value in self.beta.items():
            if not math.isfinite(value):
                raise ValueError(f"`beta` of {kind.value} must be finite but was {value}")

    @staticmethod
    def single(
        kappa: float,
        zeta: float,
        sigma: float,
        beta: float = 0.0,
        source: SourceKind = SourceKind.PHOTOVOLTAIC,
    ) -> "OuParams":
        """
        Create parameters with a single impacting source.
        """
        return OuParams(kappa=kappa, zeta=zeta, beta={source: beta}, sigma=sigma)

    @property
    def impact(self) -> float:
        """
        Get the impact slope of the control problem.

        The control problem supports one impacting source, hence at most one slope may be nonzero.
        A negative slope is rejected.
        """
        nonzero = [v for v in self.beta.values() if v != 0.0]
        if len(nonzero) > 1:
            raise ValueError(f"Control needs at most one impacting source but got slopes {self.beta}")
        impact = nonzero[0] if nonzero else 0.0
        if impact < 0:
            raise ValueError(f"Control needs a non-negative impact slope but got {impact}")
        return impact

    def with_impact(self, beta: float) -> "OuParams":
        """
        Get a copy with the impact slope of the impacting source (or of photovoltaic, if none) replaced by `beta`.
        """
        nonzero = [k for k, v in self.beta.items() if v != 0.0]
        if nonzero:
            kind = nonzero[0]
        elif self.beta:
            kind = next(iter(self.beta))
        else:
            kind = SourceKind.PHOTOVOLTAIC
        return dataclasses.replace(self, beta={kind: beta})

    @property
    def stationary_std(self) -> float:
        return self.sigma / math.sqrt(2.0 * self.kappa)


class OuStdErrors(typing.NamedTuple):
    """
    Delta-method standard errors of :class:`OuParams`.
    """

    kappa: float
    zeta: float
    beta: typing.Mapping[SourceKind, float]
    sigma: float


@dataclasses.dataclass(frozen=True)
class BoxPierceResult:
    """
    Portmanteau test of the serial independence of residuals.
    """

    statistic: float
    lags: int
    p_value: float

    def __post_init__(self):
        if not self.statistic >= 0:
            raise ValueError(f"`statistic` must be non-negative but was {self.statistic}")
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"`p_value` must be in [0, 1] but was {self.p_value}")

    def rejects(self, alpha: float = 0.05) -> bool:
        """
        Test if the independence hypothesis is rejected at the `alpha` level.
        """
        return self.p_value < alpha
