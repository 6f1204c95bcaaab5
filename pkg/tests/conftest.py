import datetime
import os
import pathlib
import typing

import numpy as np
import pandas as pd
import pytest

from renewbound.config import ZONE_PRESETS, ZONES
from renewbound.dataio import SourceKind
from renewbound.estimate import OuParams, simulate_arx
from renewbound.oufn import EconParams


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: mark test that takes long to run")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        # --runslow given in cli: do not skip slow tests
        return
    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def fpath_test_dir() -> str:
    """
    Path to `tests` folder.
    """
    return os.path.dirname(os.path.abspath(__file__))


@pytest.fixture(scope="session")
def fpath_project_dir(fpath_test_dir: str) -> str:
    """
    Path to project folder, where `pyproject.toml`, `README.md`,
    as well as `src`, `configs` and `tests` folders are located.
    """
    return os.path.dirname(fpath_test_dir)


@pytest.fixture(scope="session")
def fpath_configs_dir(fpath_project_dir: str) -> str:
    return os.path.join(fpath_project_dir, "configs")


def preset_params(zone: str) -> typing.Tuple[OuParams, EconParams]:
    preset = ZONE_PRESETS[zone]
    ou = OuParams.single(
        kappa=preset.kappa,
        zeta=preset.zeta,
        sigma=preset.sigma,
        beta=preset.beta,
        source=SourceKind.from_label(preset.source),
    )
    econ = EconParams(rho=preset.rho, cost_c=preset.cost_c, conv_a=preset.conv_a, theta=preset.theta)
    return ou, econ


@pytest.fixture(scope="session")
def north() -> typing.Tuple[OuParams, EconParams]:
    return preset_params("North")


@pytest.fixture(scope="session")
def central_north() -> typing.Tuple[OuParams, EconParams]:
    return preset_params("CentralNorth")


@pytest.fixture(scope="session")
def sardinia() -> typing.Tuple[OuParams, EconParams]:
    return preset_params("Sardinia")


SYNTHETIC_WEEKS = 321
SYNTHETIC_DT = 1.0 / 52.0
SYNTHETIC_PRICES: typing.Mapping[str, OuParams] = {
    "North": OuParams.single(kappa=10.3702, zeta=140.5894, sigma=47.6586, beta=0.0172),
    "CentralNorth": OuParams.single(kappa=5.6, zeta=90.0, sigma=20.0),
}
"""
Price parameters of the synthetic zones, the other zones follow `OuParams.single(8.0, 60.0, 30.0)`.

The Central North prices stay far above the constant boundary.
"""


def synthetic_zonal_frame(
    n_weeks: int = SYNTHETIC_WEEKS,
    seed: int = 0,
) -> pd.DataFrame:
    """
    Generate a long-format zonal frame where the North prices are impacted by the photovoltaic capacity.

    The national photovoltaic production trends upwards, the wind production is seasonal with no trend.
    """
    rng = np.random.default_rng(seed)
    t = np.arange(n_weeks)
    national_pv = 3000.0 + 8.0 * t + rng.normal(0.0, 150.0, size=n_weeks)
    national_wind = 1500.0 + 300.0 * np.sin(2.0 * np.pi * t / 52.0) + rng.normal(0.0, 100.0, size=n_weeks)
    national_pv = np.maximum(national_pv, 0.0)
    national_wind = np.maximum(national_wind, 0.0)
    shares = np.full(len(ZONES), 1.0 / len(ZONES))

    pv_proxy = np.maximum.accumulate(national_pv)
    weeks = [datetime.date(2012, 5, 7) + datetime.timedelta(weeks=int(i)) for i in t]
    rows = []
    for zone, share in zip(ZONES, shares):
        ou = SYNTHETIC_PRICES.get(zone, OuParams.single(kappa=8.0, zeta=60.0, sigma=30.0))
        prices = simulate_arx(
            ou,
            {SourceKind.PHOTOVOLTAIC: pv_proxy},
            x0=ou.zeta - ou.impact * pv_proxy[0],
            dt_years=SYNTHETIC_DT,
            rng=rng,
        )
        for week, price, pv, wind in zip(weeks, prices, share * national_pv, share * national_wind):
            rows.append((week.isoformat(), zone, float(price), float(pv), float(wind)))

    return pd.DataFrame(rows, columns=["week_start", "zone", "price_eur_mwh", "pv_mwh", "wind_mwh"])


@pytest.fixture(scope="session")
def fpath_synthetic_csv(
    tmp_path_factory: pytest.TempPathFactory,
    synthetic_frame: pd.DataFrame,
) -> str:
    """
    Path to a synthetic zonal CSV file with all six zones.
    """
    path = tmp_path_factory.mktemp("data") / "zonal_weekly.csv"
    synthetic_frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    return str(path)


@pytest.fixture
def fpath_header_only_csv(tmp_path: pathlib.Path) -> str:
    path = tmp_path / "empty.csv"
    path.write_text("week_start,zone,price_eur_mwh,pv_mwh,wind_mwh\n", encoding="utf-8")
    return str(path)


@pytest.fixture(scope="session")
def synthetic_frame() -> pd.DataFrame:
    return synthetic_zonal_frame()
