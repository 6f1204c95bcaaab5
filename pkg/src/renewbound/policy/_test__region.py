import numpy as np
import pytest

from renewbound.boundary import BoundaryKind, FreeBoundary, constant_free_boundary
from renewbound.oufn import BoundaryVariants

from ._region import Region, classify, installing_mask


@pytest.fixture
def curve() -> FreeBoundary:
    y = np.array([0.0, 50.0, 100.0])
    f = np.array([20.0, 30.0, 40.0])
    return FreeBoundary(
        kind=BoundaryKind.CURVE,
        y_grid=y,
        f_values=f,
        fhat_values=f + 0.1 * y,
        terminal_x=50.0,
        step_h=50.0,
        beta=0.1,
        variant_tags=BoundaryVariants(),
    )


class TestClassify:
    def test_boundary_belongs_to_installation_region(self, curve: FreeBoundary):
        assert classify(30.0, 50.0, curve) == (Region.INSTALLING, False)

    def test_below_boundary(self, curve: FreeBoundary):
        assert classify(29.0, 50.0, curve) == (Region.WAITING, False)

    def test_interpolated_boundary(self, curve: FreeBoundary):
        assert classify(25.0, 25.0, curve).region == Region.INSTALLING
        assert classify(24.9, 25.0, curve).region == Region.WAITING

    @pytest.mark.parametrize("x", [-100.0, 35.0, 1e6])
    def test_cap_is_saturated(self, curve: FreeBoundary, x: float):
        assert classify(x, 100.0, curve) == (Region.WAITING, True)

    def test_constant_boundary(self):
        fb = constant_free_boundary(29.3205, 6500.0, 0.5)

        assert classify(29.3205, 0.0, fb).region == Region.INSTALLING
        assert classify(29.3205 - 1.0, 3000.0, fb).region == Region.WAITING

    @pytest.mark.parametrize("y", [-1.0, 100.5, float("nan")])
    def test_capacity_out_of_range(self, curve: FreeBoundary, y: float):
        with pytest.raises(ValueError):
            classify(30.0, y, curve)

    def test_mask_matches_classify(self, curve: FreeBoundary):
        rng = np.random.default_rng(3)
        prices = rng.uniform(0.0, 60.0, size=100)
        capacities = rng.uniform(0.0, 100.0, size=100)
        capacities[:5] = 100.0

        mask = installing_mask(prices, capacities, curve)

        expected = [classify(x, y, curve).region == Region.INSTALLING for x, y in zip(prices, capacities)]
        assert mask.tolist() == expected
