import math

import numpy as np
import pytest

from renewbound.config import ZONE_PRESETS

from ._params import PsiConfig
from ._psi import PsiOverflowException, log_moment, log_psi, phi, psi, psi_ratios


def preset_config(zone: str) -> PsiConfig:
    preset = ZONE_PRESETS[zone]
    return PsiConfig(rho=preset.rho, kappa=preset.kappa, zeta=preset.zeta, sigma=preset.sigma)


def grid(config: PsiConfig, n: int = 50) -> np.ndarray:
    half = 5.0 * config.sigma / math.sqrt(2.0 * config.kappa)
    return np.linspace(config.zeta - half, config.zeta + half, num=n)


ZONES = ("North", "CentralNorth", "Sardinia")


class TestLogMoment:
    @pytest.mark.parametrize("p", [0.0149, 0.5, 1.0, 1.7, 3.0149])
    def test_zero_argument_is_a_gamma_function(
        self,
        p: float,
    ):
        expected = (p / 2 - 1) * math.log(2.0) + math.lgamma(p / 2)

        assert log_moment(p, 0.0, 1e-12, 200) == pytest.approx(expected, rel=1e-10, abs=1e-10)

    @pytest.mark.parametrize("z", [-95.0, -5.0, 0.3, 5.0, 20.0])
    def test_recurrence(
        self,
        z: float,
    ):
        # M_{p+2} - z M_{p+1} = p M_p
        p = 0.0178
        m0, m1, m2 = (math.exp(log_moment(p + k, z, 1e-12, 200) - log_moment(p, z, 1e-12, 200)) for k in range(3))

        assert m2 - z * m1 == pytest.approx(p * m0, rel=1e-6)

    @pytest.mark.parametrize("p", [0.0149, 0.5, 1.7])
    @pytest.mark.parametrize("z", [3.0e4, 35_814.0])
    def test_far_right_tail_matches_laplace(
        self,
        p: float,
        z: float,
    ):
        t_star = 0.5 * (z + math.sqrt(z * z + 4.0 * (p - 1.0)))
        curvature = 1.0 + (p - 1.0) / t_star**2
        expected = (p - 1.0) * math.log(t_star) - 0.5 * t_star**2 + z * t_star + 0.5 * math.log(2.0 * math.pi / curvature)

        assert log_moment(p, z, 1e-12, 200) == pytest.approx(expected, rel=0.0, abs=1e-5)

    def test_invalid_exponent(self):
        with pytest.raises(ValueError):
            log_moment(0.0, 1.0, 1e-12, 200)


class TestPsi:
    @pytest.mark.parametrize("zone", ZONES)
    def test_anchor_at_long_run_mean(
        self,
        zone: str,
    ):
        config = preset_config(zone)
        q = config.q
        expected = 2 ** (q / 2 - 1) * math.gamma(q / 2) / math.gamma(q)

        assert psi(config.zeta, 0, config) == pytest.approx(expected, rel=1e-8)

    @pytest.mark.parametrize("zone", ZONES)
    @pytest.mark.parametrize("order", [0, 1])
    def test_resolvent_residual(
        self,
        zone: str,
        order: int,
    ):
        config = preset_config(zone)
        rho, kappa, zeta, sigma = config.rho, config.kappa, config.zeta, config.sigma
        for x in grid(config):
            base = log_psi(x, order, config)
            d1 = math.exp(log_psi(x, order + 1, config) - base)
            d2 = math.exp(log_psi(x, order + 2, config) - base)
            rate = rho + order * kappa

            residual = 0.5 * sigma**2 * d2 + kappa * (zeta - x) * d1 - rate

            assert abs(residual) / rate <= 1e-6

    @pytest.mark.parametrize("zone", ZONES)
    def test_shape_properties(
        self,
        zone: str,
    ):
        config = preset_config(zone)
        xs = grid(config, n=25)
        ratio_values = []
        for x in xs:
            values = [psi(x, order, config) for order in range(4)]
            _, r1, r2, r3 = psi_ratios(x, config)

            assert all(v > 0 for v in values)
            assert r2 - r1 * r1 > 0
            assert r3 * r1 - r2 * r2 > 0
            ratio_values.append(values[0] / values[1])

        assert all(hi > lo for hi, lo in zip(ratio_values, ratio_values[1:]))

    def test_ratio_does_not_depend_on_normalizer(self):
        config = preset_config("CentralNorth")
        for x in (20.0, 50.0, 80.0):
            expected = math.exp(log_psi(x, 0, config) - log_psi(x, 1, config))

            assert 1.0 / psi_ratios(x, config, max_order=1)[1] == pytest.approx(expected, rel=1e-12)

    def test_overflow_is_reported(self):
        config = preset_config("North")

        with pytest.raises(PsiOverflowException) as e:
            psi(1000.0, 0, config)

        assert e.value.data["log_value"] > 709
        ratios = psi_ratios(1000.0, config)
        assert all(math.isfinite(r) and r > 0 for r in ratios)

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            psi(1.0, 4, preset_config("North"))


class TestPhi:
    def test_decreasing_solution_solves_resolvent(self):
        config = preset_config("CentralNorth")
        rho, kappa, zeta, sigma = config.rho, config.kappa, config.zeta, config.sigma
        for x in (20.0, 50.0, 70.0):
            f0, f1, f2 = (phi(x, order, config) for order in range(3))

            assert f0 > 0
            assert f1 < 0
            assert 0.5 * sigma**2 * f2 + kappa * (zeta - x) * f1 - rho * f0 == pytest.approx(0.0, abs=1e-6 * rho * f0)

    def test_mirror_of_increasing_solution(self):
        config = preset_config("CentralNorth")

        assert phi(config.zeta + 7.0, 0, config) == pytest.approx(psi(config.zeta - 7.0, 0, config), rel=1e-12)
