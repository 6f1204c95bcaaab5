import numpy as np
import pytest

from scipy.stats import chi2

from ._diagnostics import box_pierce


class TestBoxPierce:
    def test_hand_computed_fixture(self):
        # Deviations from the mean 2.5 are (-1.5, -0.5, 0.5, 1.5), r_1 = 1.25 / 5 = 0.25.
        result = box_pierce([1.0, 2.0, 3.0, 4.0], lags=1)

        assert result.statistic == pytest.approx(0.25)
        assert result.lags == 1
        assert result.p_value == pytest.approx(chi2.sf(0.25, 1))

    def test_alternating_residuals(self):
        residuals = np.tile([1.0, -1.0], 50)

        result = box_pierce(residuals, lags=1)

        assert result.statistic == pytest.approx(100 * 0.99**2)
        assert result.p_value < 1e-12

    def test_invariance_to_sign_and_scale(self):
        rng = np.random.default_rng(17)
        residuals = rng.standard_normal(200)

        q = box_pierce(residuals, lags=5).statistic

        assert box_pierce(-residuals, lags=5).statistic == pytest.approx(q, rel=1e-12)
        assert box_pierce(37.5 * residuals, lags=5).statistic == pytest.approx(q, rel=1e-12)

    def test_mean_statistic_of_white_noise(self):
        rng = np.random.default_rng(2024)

        qs = [box_pierce(rng.standard_normal(10_000), lags=10).statistic for _ in range(200)]

        assert np.mean(qs) == pytest.approx(10.0, rel=0.1)

    def test_ljung_box_is_larger(self):
        rng = np.random.default_rng(5)
        residuals = rng.standard_normal(50)

        bp = box_pierce(residuals, lags=4)
        lb = box_pierce(residuals, lags=4, ljung_box=True)

        assert lb.statistic > bp.statistic

    @pytest.mark.parametrize(
        "residuals, lags",
        [
            ([1.0, 2.0, 3.0], 3),
            ([1.0, 2.0, 3.0], 0),
            ([0.0, 0.0, 0.0, 0.0], 1),
        ],
    )
    def test_invalid_input(
        self,
        residuals,
        lags,
    ):
        with pytest.raises(ValueError):
            box_pierce(residuals, lags=lags)
