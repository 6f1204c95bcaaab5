import numpy as np
import pytest

from ._model import InstalledPowerProxy, SourceKind, ZonalDataset, ZonalObservation
from ._proxy import align, installed_power_proxy


class TestInstalledPowerProxy:
    @pytest.mark.parametrize(
        "production, expected",
        [
            ((3, 5, 4, 6), (3, 5, 5, 6)),
            ((7,), (7,)),
            ((2, 2, 2), (2, 2, 2)),
        ],
    )
    def test_running_maximum(
        self,
        production,
        expected,
    ):
        proxy = installed_power_proxy(production, SourceKind.PHOTOVOLTAIC)

        assert proxy.values == expected
        assert proxy.source_kind == SourceKind.PHOTOVOLTAIC

    def test_random_sequences_are_nondecreasing_and_idempotent(self):
        rng = np.random.default_rng(1234)
        for _ in range(100):
            production = rng.exponential(scale=1000.0, size=rng.integers(1, 60))

            proxy = installed_power_proxy(production, SourceKind.WIND)
            values = proxy.to_array()

            assert np.all(np.diff(values) >= 0)
            assert values[0] == production[0]
            assert installed_power_proxy(values, SourceKind.WIND) == proxy

    def test_scale(self):
        proxy = installed_power_proxy([1.0, 3.0, 2.0], SourceKind.WIND, scale=2.0)

        assert proxy.values == (2.0, 6.0, 6.0)

    @pytest.mark.parametrize(
        "production, message",
        [
            ((), "non-empty"),
            ((1.0, -0.5), "non-negative"),
        ],
    )
    def test_invalid_input(
        self,
        production,
        message,
    ):
        with pytest.raises(ValueError) as e:
            installed_power_proxy(production, SourceKind.WIND)

        assert message in e.value.args[0]

    def test_proxy_must_be_nondecreasing(self):
        with pytest.raises(ValueError):
            InstalledPowerProxy(values=(2.0, 1.0), source_kind=SourceKind.WIND)


class TestAlign:
    @staticmethod
    def make_dataset(n: int) -> ZonalDataset:
        return ZonalDataset(
            zone_name="North",
            observations=[ZonalObservation(i, 50.0 + i, 10.0, 20.0) for i in range(n)],
            national_pv=[100.0 + (i % 3) for i in range(n)],
            national_wind=[200.0 + (i % 7) for i in range(n)],
            dt_years=1 / 52,
        )

    @pytest.mark.parametrize("n", [2, 321])
    def test_equal_lengths(
        self,
        n: int,
    ):
        aligned = align(self.make_dataset(n))

        assert len(aligned.prices) == len(aligned.pv) == len(aligned.wind) == n
        assert aligned.wind.values == tuple(200.0 + min(i, 6) for i in range(n))

    def test_short_national_series_is_rejected(self):
        with pytest.raises(ValueError):
            ZonalDataset(
                zone_name="North",
                observations=[ZonalObservation(i, 50.0, 10.0, 20.0) for i in range(3)],
                national_pv=[100.0, 101.0],
                national_wind=[200.0, 201.0],
                dt_years=1 / 52,
            )

    def test_gap_in_week_index_is_rejected(self):
        with pytest.raises(ValueError):
            ZonalDataset(
                zone_name="North",
                observations=[ZonalObservation(0, 50.0, 1.0, 1.0), ZonalObservation(2, 50.0, 1.0, 1.0)],
                national_pv=[1.0, 1.0],
                national_wind=[1.0, 1.0],
                dt_years=1 / 52,
            )

    def test_exogenous_mapping(self):
        aligned = align(self.make_dataset(4))

        exog = aligned.exogenous([SourceKind.PHOTOVOLTAIC])

        assert list(exog) == [SourceKind.PHOTOVOLTAIC]
        assert exog[SourceKind.PHOTOVOLTAIC].tolist() == [100.0, 101.0, 102.0, 102.0]
