import typing

import numpy as np
import pytest

from renewbound.dataio import SourceKind

from ._arx import InsufficientDataError, fit_arx1, significance_refit, simulate_arx
from ._model import OuParams
from ._ou import to_discrete

DT = 1 / 52


class TestFitArx1:
    def test_noiseless_recurrence(self):
        x = [0.0]
        for _ in range(19):
            x.append(10.0 + 0.5 * x[-1])

        fit = fit_arx1(x, {})

        assert fit.a == pytest.approx(10.0, abs=1e-8)
        assert fit.b == pytest.approx(0.5, abs=1e-8)
        assert fit.delta == pytest.approx(0.0, abs=1e-8)
        assert len(fit.residuals) == fit.n_obs - 1 == 19
        assert all(0.0 <= p <= 1.0 for p in fit.p_values.values())

    def test_insufficient_observations(self):
        exog = {SourceKind.PHOTOVOLTAIC: [1.0, 2.0, 3.0], SourceKind.WIND: [3.0, 1.0, 2.0]}

        with pytest.raises(InsufficientDataError) as e:
            fit_arx1([1.0, 2.0, 3.0], exog)

        assert "insufficient observations" in e.value.args[0]

    def test_constant_proxy_is_collinear_with_intercept(self):
        rng = np.random.default_rng(3)
        price = rng.normal(50.0, 5.0, size=40)

        with pytest.raises(InsufficientDataError):
            fit_arx1(price, {SourceKind.WIND: np.full(40, 1200.0)})

    def test_residuals_are_orthogonal_to_regressors(self):
        rng = np.random.default_rng(11)
        pv = np.maximum.accumulate(3000 + 10 * np.arange(200) + rng.normal(0, 100, size=200))
        ou = OuParams.single(kappa=10.0, zeta=140.0, sigma=45.0, beta=0.015)
        price = simulate_arx(ou, {SourceKind.PHOTOVOLTAIC: pv}, x0=90.0, dt_years=DT, rng=rng)

        fit = fit_arx1(price, {SourceKind.PHOTOVOLTAIC: pv})

        resid = np.array(fit.residuals)
        for column in (np.ones(199), price[:-1], pv[:-1]):
            assert abs(resid @ column) <= 1e-8 * np.linalg.norm(column) * np.linalg.norm(resid)

    def test_recovers_coefficients_within_three_standard_errors(self):
        rng = np.random.default_rng(1)
        pv = np.maximum.accumulate(3000 + 8 * np.arange(321) + rng.normal(0, 150, size=321))
        ou = OuParams.single(kappa=10.3702, zeta=140.5894, sigma=47.6586, beta=0.0172)
        truth = to_discrete(ou, DT)
        price = simulate_arx(ou, {SourceKind.PHOTOVOLTAIC: pv}, x0=80.0, dt_years=DT, rng=rng)

        fit = fit_arx1(price, {SourceKind.PHOTOVOLTAIC: pv})

        assert abs(fit.a - truth.a) <= 3 * fit.std_errors["a"]
        assert abs(fit.b - truth.b) <= 3 * fit.std_errors["b"]
        u_pv = truth.u[SourceKind.PHOTOVOLTAIC]
        assert abs(fit.u[SourceKind.PHOTOVOLTAIC] - u_pv) <= 3 * fit.std_errors["u_photovoltaic"]


def unrelated_regressor(
    price: np.ndarray,
    kept: typing.Mapping[SourceKind, np.ndarray],
    seed: int,
) -> np.ndarray:
    """
    Build a seasonal regressor whose lagged values are orthogonal to the design of the `kept` fit
    and to its residuals, so that its least-squares coefficient is zero.
    """
    n = price.size
    season = 1500.0 + 300.0 * np.sin(2.0 * np.pi * np.arange(n) / 52.0)
    season += np.random.default_rng(seed).normal(0.0, 100.0, size=n)
    fit = fit_arx1(price, kept)
    basis = np.column_stack([np.ones(n - 1), price[:-1], *(z[:-1] for z in kept.values()), fit.residuals])
    coef, *_ = np.linalg.lstsq(basis, season[:-1], rcond=None)
    return np.append(season[:-1] - basis @ coef, season[-1])


def trending_proxy(rng: np.random.Generator, n: int) -> np.ndarray:
    return np.maximum.accumulate(3000 + 8 * np.arange(n) + rng.normal(0, 150, size=n))


class TestSignificanceRefit:
    def test_keeps_only_the_impacting_photovoltaic(self):
        rng = np.random.default_rng(21)
        pv = trending_proxy(rng, 321)
        ou = OuParams.single(kappa=10.3702, zeta=140.5894, sigma=47.6586, beta=0.0172)
        price = simulate_arx(ou, {SourceKind.PHOTOVOLTAIC: pv}, x0=90.0, dt_years=DT, rng=rng)
        wind = unrelated_regressor(price, {SourceKind.PHOTOVOLTAIC: pv}, seed=22)

        fit, retained = significance_refit(price, {SourceKind.PHOTOVOLTAIC: pv, SourceKind.WIND: wind})

        assert retained == (SourceKind.PHOTOVOLTAIC,)
        assert set(fit.u) == {SourceKind.PHOTOVOLTAIC}

    def test_keeps_only_the_impacting_wind(self):
        rng = np.random.default_rng(31)
        wind = trending_proxy(rng, 321)
        ou = OuParams.single(kappa=10.3702, zeta=140.5894, sigma=47.6586, beta=0.0172, source=SourceKind.WIND)
        price = simulate_arx(ou, {SourceKind.WIND: wind}, x0=90.0, dt_years=DT, rng=rng)
        pv = unrelated_regressor(price, {SourceKind.WIND: wind}, seed=32)

        fit, retained = significance_refit(price, {SourceKind.PHOTOVOLTAIC: pv, SourceKind.WIND: wind})

        assert retained == (SourceKind.WIND,)
        assert set(fit.u) == {SourceKind.WIND}

    def test_keeps_nothing_without_impact(self):
        rng = np.random.default_rng(41)
        ou = OuParams.single(kappa=5.6, zeta=90.0, sigma=20.0)
        price = simulate_arx(ou, {}, x0=90.0, dt_years=DT, rng=rng, n_obs=321)
        pv = unrelated_regressor(price, {}, seed=42)
        wind = unrelated_regressor(price, {}, seed=43)

        fit, retained = significance_refit(price, {SourceKind.PHOTOVOLTAIC: pv, SourceKind.WIND: wind})

        assert retained == ()
        assert fit.u == {}
        assert fit.names == ("a", "b")

    def test_empty_exogenous_mapping(self):
        rng = np.random.default_rng(8)
        price = simulate_arx(
            OuParams.single(kappa=9.0, zeta=55.0, sigma=60.0), {}, x0=55.0, dt_years=DT, rng=rng, n_obs=100
        )

        fit, retained = significance_refit(price, {})

        assert retained == ()
        assert fit.u == {}

    def test_invalid_alpha(self):
        with pytest.raises(ValueError):
            significance_refit([1.0, 2.0, 3.0, 4.0], {}, alpha=1.5)
