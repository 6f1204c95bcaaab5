import dataclasses
import math

import pytest

from renewbound.config import REPORTED_VALUES, ZONE_PRESETS
from renewbound.estimate import OuParams
from renewbound.oufn import BoundaryVariants, EconParams, PsiConfig, acca_target, cost_bar, h_eval

from ._solve import BracketException, _widen, bracket, solve_constant_boundary, solve_terminal


def preset(zone: str, variants: BoundaryVariants = BoundaryVariants()):
    p = ZONE_PRESETS[zone]
    econ = EconParams(rho=p.rho, cost_c=p.cost_c, conv_a=p.conv_a, theta=p.theta)
    ou = OuParams.single(kappa=p.kappa, zeta=p.zeta, sigma=p.sigma, beta=p.beta)
    return econ, ou, PsiConfig.of(econ, ou, variants=variants)


class TestBracket:
    def test_central_north_contains_reported_value(self):
        econ, ou, config = preset("CentralNorth")

        interval = bracket(econ, ou, config)

        assert interval.lo == cost_bar(econ, ou, config)
        assert interval.lo < REPORTED_VALUES["CentralNorth"]["terminal_x"] < interval.hi
        assert interval.widenings == 0

    @pytest.mark.parametrize("coeff", ["rho_plus_2kappa", "two_kappa"])
    def test_target_changes_sign(self, coeff: str):
        econ, ou, config = preset("North", BoundaryVariants(rhat_y_coeff=coeff))

        interval = bracket(econ, ou, config)

        assert acca_target(interval.lo, econ, ou, config) > 0
        assert acca_target(interval.hi, econ, ou, config) < 0

    @pytest.mark.parametrize("beta", [0.0, 1e-8])
    def test_north_with_vanishing_impact(self, beta: float):
        econ, ou, _ = preset("North")
        weak = ou.with_impact(beta)
        config = PsiConfig.of(econ, weak)

        interval = bracket(econ, weak, config)

        assert acca_target(interval.lo, econ, weak, config) > 0
        assert acca_target(interval.hi, econ, weak, config) < 0

    def test_widening(self):
        interval = _widen(lambda x: 5.0 - x, 10.0, 20.0)

        assert interval.widenings == 1
        assert interval.lo < 5.0 < interval.hi

    def test_no_sign_change(self):
        with pytest.raises(BracketException) as e:
            _widen(lambda x: 1.0, 0.0, 1.0)

        assert e.value.data["widenings"] > 0


class TestConstantBoundary:
    def test_central_north(self):
        econ, ou, config = preset("CentralNorth")
        tol = 1e-6

        x_bar = solve_constant_boundary(econ, ou, config, tol=tol)

        assert x_bar == pytest.approx(REPORTED_VALUES["CentralNorth"]["f_zero"], rel=0.1)
        assert h_eval(x_bar - tol, econ, ou, config) > 0 > h_eval(x_bar + tol, econ, ou, config)

    def test_deterministic(self):
        econ, ou, config = preset("CentralNorth")

        assert solve_constant_boundary(econ, ou, config) == solve_constant_boundary(econ, ou, config)

    def test_higher_cost_raises_boundary(self):
        econ, ou, config = preset("CentralNorth")
        doubled = dataclasses.replace(econ, cost_c=2 * econ.cost_c)

        assert solve_constant_boundary(doubled, ou, config) > solve_constant_boundary(econ, ou, config)

    def test_north_without_impact(self):
        econ, ou, _ = preset("North")
        still = ou.with_impact(0.0)
        config = PsiConfig.of(econ, still)
        tol = 1e-6

        x_bar = solve_constant_boundary(econ, still, config, tol=tol)

        assert math.isfinite(x_bar)
        assert h_eval(x_bar - tol, econ, still, config) > 0 > h_eval(x_bar + tol, econ, still, config)

    def test_price_impact_is_rejected(self):
        econ, ou, config = preset("North")

        with pytest.raises(ValueError):
            solve_constant_boundary(econ, ou, config)


class TestTerminal:
    def test_agrees_with_constant_boundary_without_impact(self):
        econ, ou, config = preset("CentralNorth")

        x_hat = solve_terminal(econ, ou, config)
        x_bar = solve_constant_boundary(econ, ou, config)

        assert x_hat == pytest.approx(x_bar, rel=1e-6)

    @pytest.mark.parametrize("zone", ["North", "Sardinia"])
    @pytest.mark.parametrize("coeff", ["rho_plus_2kappa", "two_kappa"])
    def test_terminal_lies_inside_bracket(self, zone: str, coeff: str):
        econ, ou, config = preset(zone, BoundaryVariants(rhat_y_coeff=coeff))

        interval = bracket(econ, ou, config)
        x_hat = solve_terminal(econ, ou, config)

        assert interval.lo < x_hat < interval.hi
        assert math.isfinite(x_hat)
        assert acca_target(x_hat - 1e-6, econ, ou, config) > 0 > acca_target(x_hat + 1e-6, econ, ou, config)

    def test_negative_impact_is_rejected(self):
        econ, ou, _ = preset("North")
        negative = ou.with_impact(-0.01)
        config = PsiConfig.of(econ, negative)

        with pytest.raises(ValueError):
            solve_terminal(econ, negative, config)
