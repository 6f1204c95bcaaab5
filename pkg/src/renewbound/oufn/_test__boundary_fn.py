import math

import numpy as np
import pytest

from scipy.optimize import brentq

from renewbound.config import ZONE_PRESETS
from renewbound.estimate import OuParams

from ._boundary_fn import acca_target, cost_bar, h_eval, ode_rhs, ode_terms
from ._params import BoundaryVariants, EconParams, PsiConfig
from ._profit import r_baseline, r_hat, r_hat_unit
from ._psi import psi_ratios


def preset(zone: str, variants: BoundaryVariants = BoundaryVariants()):
    p = ZONE_PRESETS[zone]
    econ = EconParams(rho=p.rho, cost_c=p.cost_c, conv_a=p.conv_a, theta=p.theta)
    ou = OuParams.single(kappa=p.kappa, zeta=p.zeta, sigma=p.sigma, beta=p.beta)
    return econ, ou, PsiConfig.of(econ, ou, variants=variants)


class TestRevenue:
    def test_zero_capacity(self):
        econ, ou, _ = preset("North")

        assert r_baseline(123.0, 0.0, econ, ou) == 0.0

    def test_impact_free_forms_agree(self):
        econ, ou, _ = preset("CentralNorth")

        assert r_baseline(40.0, 2000.0, econ, ou, impacted=True) == r_baseline(40.0, 2000.0, econ, ou, impacted=False)

    def test_north_by_hand(self):
        econ, ou, _ = preset("North")
        a, rho, kappa, zeta, beta = 1400.0, 0.1, 6.7, 124.7, 0.0091
        x, y = 50.0, 1000.0
        expected = (
            a * x * y / (rho + kappa)
            + a * zeta * kappa * y / (rho * (rho + kappa))
            - a * kappa * beta * y**2 / (rho * (rho + kappa))
        )

        assert r_baseline(x, y, econ, ou) == pytest.approx(expected, rel=1e-14)

    def test_capacity_outside_range(self):
        econ, ou, _ = preset("North")

        with pytest.raises(ValueError):
            r_baseline(50.0, econ.theta + 1.0, econ, ou)

    def test_marginal_revenue_without_impact_ignores_capacity(self):
        econ, ou, _ = preset("CentralNorth")

        assert r_hat(30.0, 0.0, econ, ou) == r_hat(30.0, 5000.0, econ, ou)

    def test_marginal_revenue_is_affine_in_price(self):
        econ, ou, _ = preset("North")

        slope = r_hat(11.0, 100.0, econ, ou) - r_hat(10.0, 100.0, econ, ou)

        assert slope == pytest.approx(econ.conv_a / (econ.rho + ou.kappa), rel=1e-9)

    @pytest.mark.parametrize(
        "rhat_y_coeff, coef",
        [
            ("rho_plus_2kappa", 0.1 + 2 * 6.7),
            ("two_kappa", 2 * 6.7),
        ],
    )
    def test_normalized_marginal_revenue_by_hand(
        self,
        rhat_y_coeff: str,
        coef: float,
    ):
        econ, ou, _ = preset("North")
        expected = (124.7 * 6.7 + 0.1 * 100.0 - 0.0091 * coef * 6500.0) / (0.1 * 6.8)

        assert r_hat_unit(100.0, econ.theta, econ, ou, rhat_y_coeff) == pytest.approx(expected, rel=1e-12)


class TestBoundaryFunction:
    def test_h_is_decreasing(self):
        econ, ou, config = preset("CentralNorth")

        values = [h_eval(x, econ, ou, config) for x in np.linspace(-50.0, 150.0, num=41)]

        assert all(lo < hi for hi, lo in zip(values, values[1:]))

    def test_h_is_positive_below_cost_bar(self):
        econ, ou, config = preset("CentralNorth")
        c_bar = cost_bar(econ, ou, config)

        for x in (c_bar - 100.0, c_bar - 1.0, c_bar):
            assert h_eval(x, econ, ou, config) > 0

    def test_h_rejects_price_impact(self):
        econ, ou, config = preset("North")

        with pytest.raises(ValueError):
            h_eval(100.0, econ, ou, config)

    def test_terminal_target_matches_h_without_impact(self):
        econ, ou, config = preset("CentralNorth")

        for x in (0.0, 29.3205, 75.0):
            assert acca_target(x, econ, ou, config) == pytest.approx(h_eval(x, econ, ou, config), rel=1e-12, abs=1e-9)

    def test_raw_cost_shifts_cost_bar(self):
        econ, ou, config = preset("CentralNorth")
        _, _, raw = preset("CentralNorth", BoundaryVariants(cost_normalization="raw"))

        shift = cost_bar(econ, ou, raw) - cost_bar(econ, ou, config)

        assert shift == pytest.approx((econ.cost_c - econ.c_hat) * (econ.rho + ou.kappa))

    def test_mismatched_config(self):
        econ, ou, _ = preset("North")
        _, _, other = preset("Sardinia")

        with pytest.raises(ValueError):
            cost_bar(econ, ou, other)


class TestOdeRhs:
    def test_zero_impact(self):
        econ, ou, config = preset("CentralNorth")

        assert ode_rhs(1000.0, 40.0, econ, ou, config) == 0.0

    @pytest.mark.parametrize("zone", ["North", "Sardinia"])
    def test_terminal_point_by_hand(
        self,
        zone: str,
    ):
        econ, ou, config = preset(zone)
        c_bar = cost_bar(econ, ou, config)
        hi = c_bar + 1.0 / psi_ratios(c_bar, config, max_order=1)[1]
        x_hat = brentq(acca_target, c_bar, hi, args=(econ, ou, config), xtol=1e-12, rtol=1e-14)
        _, r1, r2, _ = psi_ratios(x_hat, config)
        k1 = (econ.rho + 2.0 * ou.kappa) / econ.rho
        # At the terminal point (rho + kappa) (c - R1) = -psi / psi', which reduces N / D to
        # (k1 + 1) r1^2 / r2 - 1.
        expected = ou.impact * ((k1 + 1.0) * r1 * r1 / r2 - 1.0)

        rhs = ode_rhs(econ.theta, x_hat, econ, ou, config)

        assert math.isfinite(rhs)
        assert rhs == pytest.approx(expected, rel=1e-6)
        assert rhs > ou.impact

    def test_wronskian_is_positive(self):
        econ, ou, config = preset("North")

        for y, fhat in ((0.0, 100.0), (3000.0, 400.0), (6500.0, 1000.0)):
            assert ode_terms(y, fhat, econ, ou, config).wronskian > 0
