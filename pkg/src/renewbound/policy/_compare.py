import dataclasses
import logging
import os
import typing

import numpy as np
import pandas as pd

from renewbound._base import InputError
from renewbound.boundary import BoundaryKind, FreeBoundary, boundary_inverse
from renewbound.util import PathOrHandle, closing_if_path, open_text_io_handle_for_writing

from ._region import Region, boundary_at, installing_mask
from ._simulate import StrategyPath

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ComparisonReport:
    """
    Comparison of a realized price-capacity trajectory with the optimal boundary.
    """

    labels: typing.Tuple[Region, ...]
    saturated: typing.Tuple[bool, ...]
    prices: typing.Tuple[float, ...]
    capacities: typing.Tuple[float, ...]
    """
    The realized capacities (MW) after scaling.
    """
    missed_fraction: float
    """
    Fraction of observations in the installation region where the capacity installed by the next observation
    fell short of the optimal target.
    """
    idle_fraction: float
    """
    Fraction of observations in the installation region with no realized increment.
    """
    depth_series: typing.Tuple[float, ...]
    """
    Price minus the boundary at the realized capacity (€/MWh).
    """
    capacity_scale: float = 1.0
    emitted_plot_path: typing.Optional[str] = None

    def __post_init__(self):
        n = len(self.labels)
        if not (len(self.saturated) == len(self.prices) == len(self.capacities) == len(self.depth_series) == n):
            raise ValueError("All per-observation series must have the same length")
        for name in ("missed_fraction", "idle_fraction"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"`{name}` must be in [0, 1] but was {val}")

    @property
    def n_obs(self) -> int:
        return len(self.labels)

    @property
    def n_installing(self) -> int:
        return sum(1 for label in self.labels if label == Region.INSTALLING)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "capacity_mw": self.capacities,
                "price_eur_mwh": self.prices,
                "label": [label.value for label in self.labels],
                "depth_eur_mwh": self.depth_series,
            }
        )


def compare_realized(
    prices: typing.Sequence[float],
    capacities: typing.Sequence[float],
    fb: FreeBoundary,
    capacity_scale: float = 1.0,
    plot_path: typing.Optional[typing.Union[str, os.PathLike]] = None,
) -> ComparisonReport:
    """
    Compare a realized trajectory with the boundary.

    Each observation is labelled with its region. An installing observation counts as missed
    if the capacity at the next observation is below the optimal target: the cap for a constant boundary,
    the capacity that brings the state back to a curved boundary. The last observation has no successor
    and is compared with its own capacity.

    :param prices: the realized prices (€/MWh).
    :param capacities: the realized installed-power proxy, as is.
    :param capacity_scale: factor converting the proxy into MW on the boundary's capacity axis.
    :param plot_path: path to write the `realized.csv` plot data, or `None`.
    :raises InputError: if the series have different lengths or the scaled capacities leave `[0, theta]`.
    """
    x = np.asarray(prices, dtype=float)
    y = np.asarray(capacities, dtype=float) * capacity_scale
    if x.ndim != 1 or x.shape != y.shape or x.size == 0:
        raise InputError(f"Got {x.size} prices but {y.size} capacities")
    if not (capacity_scale > 0):
        raise InputError(f"`capacity_scale` must be positive but was {capacity_scale}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise InputError("Prices and capacities must be finite")
    if np.any(y < 0) or np.any(y > fb.theta):
        raise InputError(
            f"Scaled capacities span [{y.min()}, {y.max()}] outside [0, {fb.theta}], adjust `capacity_scale`"
        )

    installing = installing_mask(x, y, fb)
    after = np.append(y[1:], y[-1])
    increments = after - y
    if fb.kind == BoundaryKind.CONSTANT:
        target = np.full_like(y, fb.theta)
    else:
        target = np.maximum(boundary_inverse(fb, x), y)
    missed = installing & (after < target)
    idle = installing & (increments <= 0.0)

    if np.any(increments < 0):
        logger.warning("The realized capacity decreases at %d observations", int(np.count_nonzero(increments < 0)))

    report = ComparisonReport(
        labels=tuple(Region.INSTALLING if i else Region.WAITING for i in installing),
        saturated=tuple(bool(v) for v in y >= fb.theta),
        prices=tuple(float(v) for v in x),
        capacities=tuple(float(v) for v in y),
        missed_fraction=float(np.count_nonzero(missed)) / x.size,
        idle_fraction=float(np.count_nonzero(idle)) / x.size,
        depth_series=tuple(float(v) for v in x - boundary_at(fb, y)),
        capacity_scale=capacity_scale,
    )
    if plot_path is not None:
        write_realized_csv(report, plot_path)
        report = dataclasses.replace(report, emitted_plot_path=str(plot_path))
    return report


def write_realized_csv(report: ComparisonReport, file: PathOrHandle):
    """
    Write the realized trajectory with its labels, as plot data for the boundary overlay.
    """
    fh = open_text_io_handle_for_writing(file)
    with closing_if_path(file, fh):
        report.to_frame().to_csv(fh, index=False, float_format="%.17g", lineterminator="\n")


def write_strategy_path(path: StrategyPath, file: PathOrHandle):
    """
    Write a simulated path as `t_years,price_eur_mwh,capacity_mw,increment_mw`,
    with the capacity held after the adjustment at each time.
    """
    frame = pd.DataFrame(
        {
            "t_years": path.times,
            "price_eur_mwh": path.prices,
            "capacity_mw": path.held_capacities,
            "increment_mw": path.increments,
        }
    )
    fh = open_text_io_handle_for_writing(file)
    with closing_if_path(file, fh):
        frame.to_csv(fh, index=False, float_format="%.17g", lineterminator="\n")
