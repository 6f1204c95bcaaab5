import numpy as np
import pytest

from renewbound.dataio import SourceKind, align, load_zonal_panel
from renewbound.estimate import OuParams, delta_method_se, estimate_zone, fit_arx1, simulate_arx, to_continuous

DT = 1 / 52
N_OBS = 321
NORTH = OuParams.single(kappa=10.3702, zeta=140.5894, sigma=47.6586, beta=0.0172)


def test_parameters_are_recovered_within_three_standard_errors():
    n_trials = 200
    hits = {"kappa": 0, "zeta": 0, "beta": 0, "sigma": 0}

    for trial in range(n_trials):
        rng = np.random.default_rng(1000 + trial)
        pv = np.maximum.accumulate(3000 + 8 * np.arange(N_OBS) + rng.normal(0, 150, size=N_OBS))
        price = simulate_arx(NORTH, {SourceKind.PHOTOVOLTAIC: pv}, x0=90.0, dt_years=DT, rng=rng)

        fit = fit_arx1(price, {SourceKind.PHOTOVOLTAIC: pv})
        ou = to_continuous(fit, DT)
        se = delta_method_se(fit, DT)

        hits["kappa"] += abs(ou.kappa - NORTH.kappa) <= 3 * se.kappa
        hits["zeta"] += abs(ou.zeta - NORTH.zeta) <= 3 * se.zeta
        hits["beta"] += abs(ou.impact - NORTH.impact) <= 3 * se.beta[SourceKind.PHOTOVOLTAIC]
        hits["sigma"] += abs(ou.sigma - NORTH.sigma) <= 3 * se.sigma

    for name, count in hits.items():
        assert count >= 0.9 * n_trials, f"{name} recovered in {count} of {n_trials} trials"


class TestEstimateZone:
    @pytest.fixture(scope="class")
    def panel(self, fpath_synthetic_csv: str):
        return load_zonal_panel(fpath_synthetic_csv)

    def test_impacted_zone_retains_photovoltaic(self, panel):
        report = estimate_zone("North", align(panel.dataset("North")))

        assert SourceKind.PHOTOVOLTAIC in report.retained
        assert set(report.restricted.fit.u) == set(report.retained)
        ou = report.restricted_ou()
        assert ou.beta[SourceKind.PHOTOVOLTAIC] > 0
        assert ou.kappa > 0

    def test_full_model_has_both_regressors(self, panel):
        report = estimate_zone("Sardinia", align(panel.dataset("Sardinia")))

        assert report.full.fit.names == ("a", "b", "u_photovoltaic", "u_wind")
        assert report.full.box_pierce.lags == 10
        assert report.dt_years == pytest.approx(DT)

    def test_estimation_is_deterministic(self, panel):
        aligned = align(panel.dataset("CentralNorth"))

        assert estimate_zone("CentralNorth", aligned) == estimate_zone("CentralNorth", aligned)
