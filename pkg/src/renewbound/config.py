import math
import os
import pathlib
import typing


OUTDIR_ENV = "RENEWBOUND_OUTDIR"
"""
The name of the environment variable consulted by renewbound
to set the output directory.
"""

DEFAULT_OUTPUT_PATH = pathlib.Path("renewbound_out")
"""
Default path to the output directory.
"""

ZONES = ("North", "CentralNorth", "CentralSouth", "South", "Sicily", "Sardinia")
"""
Italian price zones expected in a zonal data file.
"""

DEFAULT_DT_YEARS = 1.0 / 52.0
"""
Weekly sampling step, in years.
"""

DEFAULT_BOX_PIERCE_LAGS = 10
DEFAULT_ALPHA = 0.05
"""
Significance level for dropping exogenous regressors.
"""

DEFAULT_QUAD_REL_TOL = 1e-12
DEFAULT_QUAD_MAX_NODES = 200
DEFAULT_ROOT_TOL = 1e-6
"""
Bracket width (in €/MWh) at which the bisection solvers stop.
"""

DEFAULT_DT_SIM = 1.0 / 52.0
DEFAULT_TAIL_TOL = 1e-4
"""
Discount factor below which the payoff integral is truncated.
"""

DEFAULT_N_PATHS = 4000
DEFAULT_SEED = 42


def default_horizon(
    rho: float,
    dt_sim: float = DEFAULT_DT_SIM,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> float:
    """
    Get the shortest horizon on the `dt_sim` grid with discount factor `exp(-rho * horizon) <= tail_tol`.

    >>> round(default_horizon(0.1, dt_sim=1.0), 1)
    93.0
    """
    n_steps = math.ceil(math.log(1.0 / tail_tol) / rho / dt_sim)
    return n_steps * dt_sim


class ZonePreset(typing.NamedTuple):
    """
    Price and economic parameters used to compute the boundary of a zone.
    """

    kappa: float
    zeta: float
    beta: float
    sigma: float
    cost_c: float
    conv_a: float
    theta: float
    rho: float
    source: str
    step_h: float


ZONE_PRESETS: typing.Mapping[str, ZonePreset] = {
    "North": ZonePreset(
        kappa=6.7, zeta=124.7, beta=0.0091, sigma=47.7,
        cost_c=290_000.0, conv_a=1400.0, theta=6500.0, rho=0.1,
        source="photovoltaic", step_h=0.5,
    ),
    "CentralNorth": ZonePreset(
        kappa=5.6029, zeta=50.2381, beta=0.0, sigma=58.9796,
        cost_c=290_000.0, conv_a=1400.0, theta=6500.0, rho=0.1,
        source="photovoltaic", step_h=0.5,
    ),
    "Sardinia": ZonePreset(
        kappa=13.213, zeta=115.1565, beta=0.0091, sigma=68.2889,
        cost_c=1_944_400.0, conv_a=7508.0, theta=5700.0, rho=0.1,
        source="wind", step_h=0.2,
    ),
}
"""
Parameters chosen for the boundary computations of the North, Central North and Sardinia zones.
"""

REPORTED_VALUES: typing.Mapping[str, typing.Mapping[str, float]] = {
    "North": {"terminal_x": 976.4, "f_zero": 64.9},
    "CentralNorth": {"terminal_x": 29.3205, "f_zero": 29.3205},
    "Sardinia": {"terminal_x": 1453.3, "f_zero": 61.5199},
}
"""
Published boundary values (€/MWh), reported next to the computed ones.
"""


def get_output_dir_path(
    out: typing.Optional[typing.Union[str, pathlib.Path]] = None,
) -> pathlib.Path:
    """
    Get path to the output directory.

    First try to use `out` argument.
    If `out` is `None`, then use the `RENEWBOUND_OUTDIR` environment variable, if set.
    Last, fall back to default output path (`renewbound_out` in the current working directory).

    Note: the directory is *not* created if it does not exist.
    """
    if out is None:
        out = os.environ.get(OUTDIR_ENV, DEFAULT_OUTPUT_PATH)

    if isinstance(out, pathlib.Path):
        return out
    elif isinstance(out, str):
        return pathlib.Path(out)
    else:
        raise ValueError(f"`out` must be a `str` or `pathlib.Path` but was {type(out)}")
