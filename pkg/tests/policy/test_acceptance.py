import math

import numpy as np
import pytest

from renewbound.boundary import constant_free_boundary, solve_constant_boundary
from renewbound.oufn import PsiConfig, r_baseline
from renewbound.policy import BoundaryRule, InstallAtStart, NeverInstall, payoff_mc


@pytest.mark.slow
@pytest.mark.parametrize("zone", ["north", "central_north", "sardinia"])
def test_doing_nothing_matches_the_closed_form(zone: str, request: pytest.FixtureRequest):
    ou, econ = request.getfixturevalue(zone)
    rng = np.random.default_rng(17)

    for trial in range(5):
        x0 = float(rng.uniform(ou.zeta - 60.0, ou.zeta + 60.0))
        y0 = float(rng.uniform(0.0, econ.theta))

        estimate = payoff_mc(ou, econ, NeverInstall(), x0=x0, y0=y0, n_paths=4000, seed=trial, antithetic=False)

        expected = r_baseline(x0, y0, econ, ou)
        # The relative tolerance covers the trapezoidal rule on the weekly grid.
        assert estimate.within(expected, n_se=3.0, rel_tol=2e-3), (x0, y0, estimate, expected)


@pytest.mark.slow
@pytest.mark.parametrize("x0", [0.0, 60.0])
def test_boundary_strategy_beats_simple_strategies(central_north, x0: float):
    ou, econ = central_north
    x_bar = solve_constant_boundary(econ, ou, PsiConfig.of(econ, ou))
    rule = BoundaryRule(constant_free_boundary(x_bar, econ.theta, 0.5))
    kwargs = dict(x0=x0, y0=0.0, n_paths=4000, seed=2024)

    optimal = payoff_mc(ou, econ, rule, **kwargs)
    never = payoff_mc(ou, econ, NeverInstall(), **kwargs)
    start = payoff_mc(ou, econ, InstallAtStart(econ.theta), **kwargs)

    assert optimal.mean >= never.mean - 3 * math.hypot(optimal.std_error, never.std_error)
    assert optimal.mean >= start.mean - 3 * math.hypot(optimal.std_error, start.std_error)
