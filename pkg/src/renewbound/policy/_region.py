import enum
import math
import typing

import numpy as np

from renewbound.boundary import BoundaryKind, FreeBoundary


class Region(enum.Enum):
    """
    Region of the price-capacity plane.
    """

    WAITING = "waiting"
    """
    Price below the boundary, `x < F(y)`: installing more is not optimal.
    """

    INSTALLING = "installing"
    """
    Price at or above the boundary, `x >= F(y)`: capacity should be raised up to the boundary.
    """


class Classification(typing.NamedTuple):
    region: Region
    saturated: bool
    """
    `True` if the capacity reached the cap and no further installation is admissible.
    """


def classify(
    x: float,
    y: float,
    fb: FreeBoundary,
) -> Classification:
    """
    Classify the state `(x, y)` with respect to the free boundary.

    The boundary belongs to the installation region. At the capacity cap the state is always waiting
    and flagged as saturated.

    :param x: the price (€/MWh).
    :param y: the installed capacity (MW), in `[0, theta]`.
    """
    if not (math.isfinite(y) and 0.0 <= y <= fb.theta):
        raise ValueError(f"Capacity {y} must be in [0, {fb.theta}]")
    if y == fb.theta:
        return Classification(Region.WAITING, True)
    region = Region.INSTALLING if x >= fb.evaluate(y) else Region.WAITING
    return Classification(region, False)


def installing_mask(
    prices: np.ndarray,
    capacities: np.ndarray,
    fb: FreeBoundary,
) -> np.ndarray:
    """
    Vectorized :func:`classify`: `True` where the unsaturated state lies in the installation region.
    """
    prices = np.asarray(prices, dtype=float)
    capacities = np.asarray(capacities, dtype=float)
    return (capacities < fb.theta) & (prices >= boundary_at(fb, capacities))


def boundary_at(fb: FreeBoundary, capacities: np.ndarray) -> np.ndarray:
    if fb.kind == BoundaryKind.CONSTANT:
        return np.full(np.shape(capacities), fb.terminal_x)
    return np.interp(capacities, fb.y_grid, fb.f_values)
