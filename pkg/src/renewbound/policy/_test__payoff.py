import math

import numpy as np
import pytest

from renewbound.boundary import constant_free_boundary, solve_constant_boundary
from renewbound.config import default_horizon
from renewbound.estimate import OuParams
from renewbound.oufn import EconParams, PsiConfig, r_baseline

from ._payoff import PayoffEstimate, path_payoffs, payoff_mc, tail_bound, value_beta0
from ._rules import BoundaryRule, InstallAtStart, NeverInstall

ECON = EconParams(rho=0.1, cost_c=290_000.0, conv_a=1400.0, theta=6500.0)
CENTRAL_NORTH = OuParams.single(kappa=5.6029, zeta=50.2381, sigma=58.9796)
NORTH = OuParams.single(kappa=6.7, zeta=124.7, sigma=47.7, beta=0.0091)


@pytest.fixture(scope="module")
def x_bar() -> float:
    return solve_constant_boundary(ECON, CENTRAL_NORTH, PsiConfig.of(ECON, CENTRAL_NORTH))


class TestPayoffEstimate:
    def test_within(self):
        estimate = PayoffEstimate(mean=100.0, std_error=1.0, n_paths=10, horizon=1.0, tail_bound=0.5)

        assert estimate.within(103.4)
        assert not estimate.within(103.6)
        assert estimate.within(110.0, rel_tol=0.1)

    def test_invalid(self):
        with pytest.raises(ValueError):
            PayoffEstimate(mean=1.0, std_error=-1.0, n_paths=10, horizon=1.0, tail_bound=0.0)


class TestPathPayoffs:
    def test_by_hand(self):
        econ = EconParams(rho=0.1, cost_c=10.0, conv_a=2.0, theta=5.0)
        times = np.array([0.0, 1.0, 2.0])
        prices = np.array([[3.0, 4.0, 5.0]])
        capacities = np.array([[1.0, 2.0, 4.0, 4.0]])
        d1, d2 = math.exp(-0.1), math.exp(-0.2)

        actual = path_payoffs(econ, times, prices, capacities)

        revenue = 2.0 * (0.5 * (3.0 + 4.0 * d1) * 2.0 + 0.5 * (4.0 * d1 + 5.0 * d2) * 4.0)
        cost = 10.0 * (1.0 + 2.0 * d1)
        assert actual[0] == pytest.approx(revenue - cost)


class TestPayoffMc:
    def test_nothing_installed_nothing_earned(self):
        estimate = payoff_mc(NORTH, ECON, NeverInstall(), x0=100.0, y0=0.0, horizon=5.0, n_paths=20)

        assert estimate.mean == 0.0
        assert estimate.std_error == 0.0

    def test_default_horizon_and_tail_bound(self):
        estimate = payoff_mc(NORTH, ECON, NeverInstall(), x0=100.0, y0=0.0, n_paths=2)

        assert estimate.horizon == default_horizon(ECON.rho)
        assert estimate.tail_bound == tail_bound(NORTH, ECON, 100.0, estimate.horizon)
        assert estimate.seed == 42

    def test_closed_form_without_impact(self):
        y0 = 1000.0
        x0 = CENTRAL_NORTH.zeta

        estimate = payoff_mc(CENTRAL_NORTH, ECON, NeverInstall(), x0=x0, y0=y0, n_paths=100, seed=1)

        assert estimate.within(r_baseline(x0, y0, ECON, CENTRAL_NORTH), rel_tol=1e-5)

    def test_closed_form_with_impact(self):
        y0 = 2000.0
        x0 = NORTH.zeta - NORTH.impact * y0

        estimate = payoff_mc(NORTH, ECON, NeverInstall(), x0=x0, y0=y0, n_paths=100, seed=2)

        expected = r_baseline(x0, y0, ECON, NORTH)
        assert expected < r_baseline(x0, y0, ECON, NORTH, impacted=False)
        assert estimate.within(expected, rel_tol=1e-5)

    def test_independent_paths_agree_with_closed_form(self):
        y0 = 1000.0
        x0 = 80.0

        estimate = payoff_mc(CENTRAL_NORTH, ECON, NeverInstall(), x0=x0, y0=y0, n_paths=400, seed=3, antithetic=False)

        assert estimate.std_error > 0
        assert estimate.within(r_baseline(x0, y0, ECON, CENTRAL_NORTH), n_se=4.0, rel_tol=2e-3)

    def test_standard_error_shrinks_with_paths(self):
        kwargs = dict(x0=80.0, y0=1000.0, horizon=10.0, seed=4, antithetic=False)

        small = payoff_mc(CENTRAL_NORTH, ECON, NeverInstall(), n_paths=1000, **kwargs)
        large = payoff_mc(CENTRAL_NORTH, ECON, NeverInstall(), n_paths=4000, **kwargs)

        assert 1.5 <= small.std_error / large.std_error <= 2.5

    def test_deterministic(self):
        kwargs = dict(x0=100.0, y0=500.0, horizon=2.0, n_paths=50, seed=9)

        assert payoff_mc(NORTH, ECON, NeverInstall(), **kwargs) == payoff_mc(NORTH, ECON, NeverInstall(), **kwargs)

    def test_boundary_rule_beats_simple_rules(self, x_bar: float):
        rule = BoundaryRule(constant_free_boundary(x_bar, ECON.theta, 0.5))
        kwargs = dict(x0=-100.0, y0=0.0, n_paths=200, seed=5)

        optimal = payoff_mc(CENTRAL_NORTH, ECON, rule, **kwargs)
        never = payoff_mc(CENTRAL_NORTH, ECON, NeverInstall(), **kwargs)
        start = payoff_mc(CENTRAL_NORTH, ECON, InstallAtStart(ECON.theta), **kwargs)

        assert optimal.mean >= never.mean - 3 * math.hypot(optimal.std_error, never.std_error)
        assert optimal.mean >= start.mean - 3 * math.hypot(optimal.std_error, start.std_error)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n_paths=1),
            dict(n_paths=11),
            dict(horizon=1.0, dt_sim=0.3),
            dict(max_tail_bound=1.0),
        ],
    )
    def test_invalid_arguments(self, kwargs):
        with pytest.raises(ValueError):
            payoff_mc(NORTH, ECON, NeverInstall(), x0=100.0, y0=0.0, **kwargs)


class TestValueBeta0:
    def test_full_capacity(self, x_bar: float):
        config = PsiConfig.of(ECON, CENTRAL_NORTH)

        for x in (-20.0, 10.0, x_bar, 80.0):
            assert value_beta0(x, ECON.theta, x_bar, ECON, CENTRAL_NORTH, config) == pytest.approx(
                r_baseline(x, ECON.theta, ECON, CENTRAL_NORTH)
            )

    def test_installation_branch(self, x_bar: float):
        config = PsiConfig.of(ECON, CENTRAL_NORTH)

        actual = value_beta0(x_bar + 5.0, 1000.0, x_bar, ECON, CENTRAL_NORTH, config)

        expected = r_baseline(x_bar + 5.0, ECON.theta, ECON, CENTRAL_NORTH) - ECON.cost_c * (ECON.theta - 1000.0)
        assert actual == pytest.approx(expected)

    def test_continuous_across_the_boundary(self, x_bar: float):
        config = PsiConfig.of(ECON, CENTRAL_NORTH)

        below = value_beta0(x_bar - 1e-7, 1000.0, x_bar, ECON, CENTRAL_NORTH, config)
        at = value_beta0(x_bar, 1000.0, x_bar, ECON, CENTRAL_NORTH, config)

        assert below == pytest.approx(at, rel=1e-6)

    def test_dominates_doing_nothing(self, x_bar: float):
        config = PsiConfig.of(ECON, CENTRAL_NORTH)
        rng = np.random.default_rng(7)

        for x, y in zip(rng.uniform(-50.0, 150.0, size=200), rng.uniform(0.0, ECON.theta, size=200)):
            w = value_beta0(x, y, x_bar, ECON, CENTRAL_NORTH, config)
            r = r_baseline(x, y, ECON, CENTRAL_NORTH)
            assert w >= r - 1e-6 * max(1.0, abs(r))

    def test_price_impact_is_rejected(self, x_bar: float):
        with pytest.raises(ValueError):
            value_beta0(30.0, 0.0, x_bar, ECON, NORTH, PsiConfig.of(ECON, NORTH))
