import io

import numpy as np
import pytest

from renewbound._base import InputError
from renewbound.boundary import BoundaryKind, FreeBoundary, constant_free_boundary
from renewbound.oufn import BoundaryVariants

from ._compare import compare_realized, write_strategy_path
from ._region import Region
from ._simulate import StrategyPath


@pytest.fixture
def constant() -> FreeBoundary:
    return constant_free_boundary(30.0, 100.0, 10.0)


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


class TestCompareRealized:
    def test_four_points_by_hand(self, constant: FreeBoundary):
        report = compare_realized([25.0, 35.0, 40.0, 20.0], [10.0, 10.0, 50.0, 50.0], constant)

        assert report.labels == (Region.WAITING, Region.INSTALLING, Region.INSTALLING, Region.WAITING)
        assert report.missed_fraction == 0.5
        assert report.idle_fraction == 0.25
        assert report.depth_series == (-5.0, 5.0, 10.0, -10.0)
        assert report.n_installing == 2

    def test_curve_by_hand(self, curve: FreeBoundary):
        report = compare_realized([35.0, 25.0], [10.0, 60.0], curve)

        assert report.labels == (Region.INSTALLING, Region.WAITING)
        assert report.missed_fraction == 0.5
        assert report.idle_fraction == 0.0
        assert report.depth_series == pytest.approx((13.0, -7.0))

    def test_enough_installed_is_not_missed(self, curve: FreeBoundary):
        report = compare_realized([35.0, 25.0], [10.0, 80.0], curve)

        assert report.missed_fraction == 0.0

    def test_path_below_boundary(self, curve: FreeBoundary):
        report = compare_realized([10.0, 15.0, 19.0], [0.0, 10.0, 20.0], curve)

        assert report.missed_fraction == 0.0
        assert report.idle_fraction == 0.0
        assert all(label == Region.WAITING for label in report.labels)

    def test_price_always_above_constant_boundary(self):
        fb = constant_free_boundary(29.3205, 6500.0, 0.5)

        report = compare_realized([40.0, 55.0, 61.0, 45.0], [100.0, 200.0, 300.0, 400.0], fb)

        assert report.missed_fraction == 1.0
        assert report.idle_fraction == 0.25

    def test_saturated(self, constant: FreeBoundary):
        report = compare_realized([50.0], [100.0], constant)

        assert report.labels == (Region.WAITING,)
        assert report.saturated == (True,)
        assert report.missed_fraction == 0.0

    def test_capacity_scale(self, constant: FreeBoundary):
        report = compare_realized([25.0, 35.0], [20.0, 40.0], constant, capacity_scale=0.5)

        assert report.capacities == (10.0, 20.0)
        assert report.capacity_scale == 0.5

    def test_plot_data(self, tmp_path, constant: FreeBoundary):
        path = tmp_path / "realized.csv"

        report = compare_realized([25.0, 35.0], [10.0, 20.0], constant, plot_path=path)

        assert report.emitted_plot_path == str(path)
        assert path.read_text() == (
            "capacity_mw,price_eur_mwh,label,depth_eur_mwh\n10,25,waiting,-5\n20,35,installing,5\n"
        )

    @pytest.mark.parametrize(
        "prices, capacities",
        [
            ([1.0, 2.0], [1.0]),
            ([], []),
            ([1.0], [-1.0]),
            ([1.0], [101.0]),
            ([float("nan")], [1.0]),
        ],
    )
    def test_invalid_input(self, constant: FreeBoundary, prices, capacities):
        with pytest.raises(InputError):
            compare_realized(prices, capacities, constant)


class TestWriteStrategyPath:
    def test_layout(self):
        path = StrategyPath(times=[0.0, 0.5], prices=[30.0, 31.5], capacities=[0.0, 10.0, 10.0], seed=1, dt_sim=0.5)
        buf = io.StringIO()

        write_strategy_path(path, buf)

        assert buf.getvalue() == "t_years,price_eur_mwh,capacity_mw,increment_mw\n0,30,10,10\n0.5,31.5,10,0\n"
