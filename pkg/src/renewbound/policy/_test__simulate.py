import numpy as np
import pytest

from renewbound.boundary import BoundaryKind, FreeBoundary, constant_free_boundary
from renewbound.estimate import OuParams
from renewbound.oufn import BoundaryVariants, EconParams

from ._rules import FixedSchedule, InstallAtStart, NeverInstall
from ._simulate import PriceStepper, StrategyPath, simulate_optimal, simulate_strategy, simulation_grid

ECON = EconParams(rho=0.1, cost_c=290_000.0, conv_a=1400.0, theta=6500.0)
CENTRAL_NORTH = OuParams.single(kappa=5.6029, zeta=50.2381, sigma=58.9796)
NORTH = OuParams.single(kappa=6.7, zeta=124.7, sigma=47.7, beta=0.0091)


@pytest.fixture
def linear_curve() -> FreeBoundary:
    """
    Boundary `F(y) = 60 + 0.1 y` for the North impact slope.
    """
    y = np.linspace(0.0, ECON.theta, 101)
    f = 60.0 + 0.1 * y
    fhat = f + NORTH.impact * y
    return FreeBoundary(
        kind=BoundaryKind.CURVE,
        y_grid=y,
        f_values=f,
        fhat_values=fhat,
        terminal_x=fhat[-1],
        step_h=y[1],
        beta=NORTH.impact,
        variant_tags=BoundaryVariants(),
    )


class TestSimulationGrid:
    def test_inconsistent_dt(self):
        with pytest.raises(ValueError, match="Inconsistent dt"):
            simulation_grid(1.0, 0.3)

    @pytest.mark.parametrize("horizon, dt_sim", [(1.0, 0.0), (0.1, 0.2), (float("inf"), 0.1)])
    def test_invalid(self, horizon: float, dt_sim: float):
        with pytest.raises(ValueError):
            simulation_grid(horizon, dt_sim)

    def test_weekly(self):
        times = simulation_grid(2.0, 1.0 / 52.0)

        assert times.size == 105
        assert times[-1] == pytest.approx(2.0)


class TestPriceStepper:
    def test_exact_step_without_noise_decays_to_impacted_mean(self):
        stepper = PriceStepper(NORTH, 0.5)
        capacities = np.array([0.0, 1000.0])

        prices = stepper.step(np.array([200.0, 200.0]), capacities, np.zeros(2))

        mean = NORTH.zeta - NORTH.impact * capacities
        assert prices.tolist() == pytest.approx((mean + (200.0 - mean) * np.exp(-NORTH.kappa * 0.5)).tolist())

    def test_euler_step(self):
        stepper = PriceStepper(CENTRAL_NORTH, 0.01, scheme="euler")

        prices = stepper.step(np.array([40.0]), np.array([0.0]), np.array([1.0]))

        expected = 40.0 + CENTRAL_NORTH.kappa * (CENTRAL_NORTH.zeta - 40.0) * 0.01 + CENTRAL_NORTH.sigma * 0.1
        assert prices[0] == pytest.approx(expected)

    def test_invalid_scheme(self):
        with pytest.raises(ValueError):
            PriceStepper(NORTH, 0.1, scheme="milstein")


class TestStrategyPath:
    def test_decreasing_capacity_is_rejected(self):
        with pytest.raises(ValueError):
            StrategyPath(times=[0.0, 1.0], prices=[1.0, 2.0], capacities=[0.0, 5.0, 4.0], seed=1, dt_sim=1.0)

    def test_shapes(self):
        with pytest.raises(ValueError):
            StrategyPath(times=[0.0, 1.0], prices=[1.0, 2.0], capacities=[0.0, 5.0], seed=1, dt_sim=1.0)


class TestSimulateOptimal:
    def test_jump_at_start(self):
        fb = constant_free_boundary(29.3205, ECON.theta, 0.5)

        path = simulate_optimal(CENTRAL_NORTH, ECON, fb, x0=40.0, y0=1000.0, horizon=5.0, seed=11)

        assert path.increments[0] == ECON.theta - 1000.0
        assert np.all(path.increments[1:] == 0.0)
        assert path.capacities[0] == 1000.0
        assert np.all(path.held_capacities == ECON.theta)

    def test_price_below_boundary_never_installs(self):
        fb = constant_free_boundary(100.0, ECON.theta, 0.5)
        quiet = OuParams.single(kappa=5.6029, zeta=50.0, sigma=1e-6)

        path = simulate_optimal(quiet, ECON, fb, x0=40.0, y0=0.0, horizon=20.0, seed=11)

        assert path.total_installed == 0.0
        assert np.max(path.prices) < 51.0

    def test_curved_boundary_keeps_the_state_in_the_waiting_region(self, linear_curve: FreeBoundary):
        path = simulate_optimal(NORTH, ECON, linear_curve, x0=100.0, y0=0.0, horizon=10.0, seed=5)

        held = path.held_capacities
        unsaturated = held < ECON.theta
        overshoot = path.prices[unsaturated] - linear_curve.evaluate(held[unsaturated])
        assert np.all(overshoot <= 1e-9)
        assert held[0] == pytest.approx(400.0)
        assert np.all(path.increments >= 0)
        assert np.all(path.capacities <= ECON.theta)

    def test_deterministic(self, linear_curve: FreeBoundary):
        a = simulate_optimal(NORTH, ECON, linear_curve, x0=100.0, y0=0.0, horizon=2.0, seed=5)
        b = simulate_optimal(NORTH, ECON, linear_curve, x0=100.0, y0=0.0, horizon=2.0, seed=5)
        c = simulate_optimal(NORTH, ECON, linear_curve, x0=100.0, y0=0.0, horizon=2.0, seed=6)

        assert a == b
        assert a != c

    def test_boundary_must_match_impact(self):
        fb = constant_free_boundary(29.3205, ECON.theta, 0.5)

        with pytest.raises(ValueError, match="beta"):
            simulate_optimal(NORTH, ECON, fb, x0=40.0, y0=0.0, horizon=1.0)

    def test_invalid_start(self, linear_curve: FreeBoundary):
        with pytest.raises(ValueError):
            simulate_optimal(NORTH, ECON, linear_curve, x0=100.0, y0=7000.0, horizon=1.0)


class TestRules:
    def test_never_install(self):
        path = simulate_strategy(NORTH, ECON, NeverInstall(), x0=100.0, y0=250.0, horizon=1.0, seed=1)

        assert path.total_installed == 0.0

    def test_install_at_start(self):
        path = simulate_strategy(NORTH, ECON, InstallAtStart(ECON.theta), x0=0.0, y0=0.0, horizon=1.0, seed=1)

        assert path.increments[0] == ECON.theta

    def test_fixed_schedule_holds_its_last_level(self):
        rule = FixedSchedule.from_increments(100.0, [0.0, 50.0, 25.0])

        path = simulate_strategy(NORTH, ECON, rule, x0=100.0, y0=100.0, horizon=1.0, seed=1)

        assert path.held_capacities[:4].tolist() == [100.0, 150.0, 175.0, 175.0]
        assert path.held_capacities[-1] == 175.0

    def test_fixed_schedule_is_clamped_at_the_cap(self):
        rule = FixedSchedule([7000.0])

        path = simulate_strategy(NORTH, ECON, rule, x0=100.0, y0=0.0, horizon=1.0, seed=1)

        assert path.capacities.max() == ECON.theta

    @pytest.mark.parametrize("levels", [[], [1.0, 0.5], [-1.0], [float("nan")]])
    def test_invalid_schedule(self, levels):
        with pytest.raises(ValueError):
            FixedSchedule(levels)
