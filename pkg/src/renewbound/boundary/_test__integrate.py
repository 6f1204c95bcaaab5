import numpy as np
import pytest

from renewbound._base import SolverException
from renewbound.config import ZONE_PRESETS
from renewbound.estimate import OuParams
from renewbound.oufn import BoundaryVariants, EconParams, PsiConfig

from ._integrate import capacity_grid, constant_free_boundary, integrate_free_boundary
from ._model import BoundaryKind
from ._solve import solve_constant_boundary, solve_terminal


def preset(zone: str, beta=None):
    p = ZONE_PRESETS[zone]
    econ = EconParams(rho=p.rho, cost_c=p.cost_c, conv_a=p.conv_a, theta=p.theta)
    ou = OuParams.single(kappa=p.kappa, zeta=p.zeta, sigma=p.sigma, beta=p.beta if beta is None else beta)
    return econ, ou, PsiConfig.of(econ, ou)


class TestCapacityGrid:
    def test_lands_on_both_ends(self):
        y = capacity_grid(6500.0, 0.5)

        assert y[0] == 0.0
        assert y[-1] == 6500.0
        assert y.size == 13_001
        assert np.allclose(np.diff(y), 0.5)

    def test_final_partial_step(self):
        y = capacity_grid(10.0, 3.0)

        assert y.tolist() == pytest.approx([0.0, 1.0, 4.0, 7.0, 10.0])

    @pytest.mark.parametrize("step_h", [0.0, -1.0, 11.0, float("nan")])
    def test_invalid_step(self, step_h: float):
        with pytest.raises(ValueError):
            capacity_grid(10.0, step_h)


class TestConstantFreeBoundary:
    def test_flat(self):
        fb = constant_free_boundary(29.5, 10.0, 2.5)

        assert fb.kind == BoundaryKind.CONSTANT
        assert fb.beta == 0.0
        assert np.all(fb.f_values == 29.5)
        assert np.all(fb.fhat_values == 29.5)
        assert fb.y_grid.tolist() == [0.0, 2.5, 5.0, 7.5, 10.0]


class TestIntegrateFreeBoundary:
    def test_without_impact_the_boundary_is_constant(self):
        econ, ou, config = preset("CentralNorth")

        fb = integrate_free_boundary(econ, ou, config, step_h=65.0)

        assert fb.kind == BoundaryKind.CONSTANT
        assert np.all(fb.f_values == fb.terminal_x)
        assert fb.terminal_x == solve_terminal(econ, ou, config)
        assert fb.diagnostics["root_tol"] == 1e-6

    def test_weak_impact_curve(self):
        econ, ou, config = preset("CentralNorth", beta=1e-4)

        fb = integrate_free_boundary(econ, ou, config, step_h=650.0)

        assert fb.kind == BoundaryKind.CURVE
        assert fb.beta == 1e-4
        assert fb.y_grid.size == 11
        assert fb.fhat_values[-1] == fb.terminal_x
        assert np.allclose(fb.f_values, fb.fhat_values - fb.beta * fb.y_grid, rtol=0.0, atol=1e-10)
        assert np.all(np.diff(fb.f_values) >= 0)
        assert fb.f_zero < fb.f_values[-1]
        assert fb.variant_tags == BoundaryVariants()
        assert fb.diagnostics["total_substeps"] >= 10

    def test_continuity_in_impact(self):
        econ, ou, config = preset("North", beta=1e-12)
        _, ou_free, config_free = preset("North", beta=0.0)

        fb = integrate_free_boundary(econ, ou, config, step_h=650.0)
        x_bar = solve_constant_boundary(econ, ou_free, config_free)

        assert fb.kind == BoundaryKind.CURVE
        assert np.max(np.abs(fb.f_values - x_bar)) <= 1e-5

    def test_deterministic(self):
        econ, ou, config = preset("CentralNorth", beta=1e-4)

        assert integrate_free_boundary(econ, ou, config, step_h=1300.0) == integrate_free_boundary(
            econ, ou, config, step_h=1300.0
        )

    def test_unguarded_march_takes_single_steps(self):
        econ, ou, config = preset("CentralNorth", beta=1e-4)

        fb = integrate_free_boundary(econ, ou, config, step_h=65.0, stability_guard=False)

        assert fb.diagnostics["total_substeps"] == 100
        assert fb.diagnostics["guarded_steps"] == 0

    def test_implicit_scheme_agrees_with_explicit(self):
        econ, ou, config = preset("CentralNorth", beta=1e-4)

        explicit = integrate_free_boundary(econ, ou, config, step_h=65.0)
        implicit = integrate_free_boundary(econ, ou, config, step_h=65.0, scheme="implicit")

        assert implicit.terminal_x == explicit.terminal_x
        drop = explicit.terminal_x - explicit.f_zero
        assert abs(implicit.f_zero - explicit.f_zero) <= 0.1 * drop + 1e-9

    def test_invalid_arguments(self):
        econ, ou, config = preset("North")

        with pytest.raises(ValueError):
            integrate_free_boundary(econ, ou, config, step_h=0.5, scheme="rk4")
        with pytest.raises(ValueError):
            integrate_free_boundary(econ, ou, config, step_h=7000.0)

    def test_solver_failures_carry_the_location(self, monkeypatch):
        econ, ou, config = preset("CentralNorth", beta=1e-4)

        def explode(*args, **kwargs):
            return float("nan")

        monkeypatch.setattr("renewbound.boundary._integrate.ode_rhs", explode)
        with pytest.raises(SolverException) as e:
            integrate_free_boundary(econ, ou, config, step_h=3250.0, stability_guard=False)

        assert e.value.data["y"] == 3250.0
