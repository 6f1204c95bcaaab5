import numpy as np
import pytest

from renewbound.boundary import bracket, integrate_free_boundary
from renewbound.config import REPORTED_VALUES
from renewbound.oufn import RHAT_Y_COEFFS, BoundaryVariants, PsiConfig


@pytest.mark.slow
@pytest.mark.parametrize("rhat_y_coeff", RHAT_Y_COEFFS)
@pytest.mark.parametrize("zone", ["north", "sardinia"])
def test_curved_boundary_at_published_steps(zone: str, rhat_y_coeff: str, request: pytest.FixtureRequest):
    ou, econ = request.getfixturevalue(zone)
    step_h = 0.5 if zone == "north" else 0.2
    config = PsiConfig.of(econ, ou, variants=BoundaryVariants(rhat_y_coeff=rhat_y_coeff))

    fb = integrate_free_boundary(econ, ou, config, step_h=step_h)

    interval = bracket(econ, ou, config)
    assert interval.lo <= fb.terminal_x <= interval.hi
    assert fb.is_monotone()
    assert np.all(np.isfinite(fb.f_values))
    assert fb.f_zero < fb.terminal_x
    assert fb.variant_tags.rhat_y_coeff == rhat_y_coeff


@pytest.mark.slow
@pytest.mark.parametrize("zone", ["central_north", "north"])
def test_explicit_scheme_converges_with_first_order(zone: str, request: pytest.FixtureRequest):
    ou, econ = request.getfixturevalue(zone)
    ou = ou.with_impact(1e-4)
    config = PsiConfig.of(econ, ou)

    f_zero = [
        integrate_free_boundary(econ, ou, config, step_h=h, stability_guard=False).f_zero
        for h in (16.25, 8.125, 4.0625)
    ]

    coarse, fine = abs(f_zero[0] - f_zero[1]), abs(f_zero[1] - f_zero[2])
    # Halving the step halves the change of F(0) for a first-order scheme.
    assert fine < coarse
    assert 1.3 <= coarse / fine <= 3.0



@pytest.mark.slow
def test_sardinia_boundary_under_the_stability_guard(sardinia):
    """
    Unguarded explicit Euler fails for Sardinia because `F` would decrease at `y=0`.
    With the sub-step guard the boundary starts at `F(0)` close to 63.58 €/MWh,
    about 3% above the published 61.5199 €/MWh, so the published figure is not reproduced exactly.
    """
    ou, econ = sardinia
    config = PsiConfig.of(econ, ou)

    fb = integrate_free_boundary(econ, ou, config, step_h=0.2)

    assert fb.is_monotone()
    assert fb.f_zero == pytest.approx(REPORTED_VALUES["Sardinia"]["f_zero"], rel=0.05)
    assert fb.f_zero > REPORTED_VALUES["Sardinia"]["f_zero"]
