import math
import typing

import numpy as np

from renewbound._base import SolverException
from renewbound.boundary import FreeBoundary
from renewbound.config import DEFAULT_DT_SIM, DEFAULT_SEED
from renewbound.estimate import OuParams
from renewbound.oufn import EconParams

from ._rules import BoundaryRule, InstallationRule

SCHEMES = ("exact", "euler")


class SimulationException(SolverException):
    """
    Reports a simulation that produced non-finite prices.
    """

    pass


class StrategyPath:
    """
    `StrategyPath` is one simulated trajectory of the price and of the installed capacity.

    The capacity is adjusted at every grid time `t_k`, before the price moves to `t_{k+1}`.
    `capacities[0]` is the initial capacity and `capacities[k + 1]` the capacity held after the adjustment at `t_k`,
    hence `capacities[k + 1] = capacities[k] + increments[k]`.
    """

    def __init__(
        self,
        times: typing.Sequence[float],
        prices: typing.Sequence[float],
        capacities: typing.Sequence[float],
        seed: typing.Optional[int],
        dt_sim: float,
    ):
        self._times = _frozen(times)
        self._prices = _frozen(prices)
        self._capacities = _frozen(capacities)
        self._increments = _frozen(np.diff(self._capacities))
        self._seed = seed
        self._dt_sim = float(dt_sim)

        n = self._times.size
        if n < 1 or self._prices.size != n or self._capacities.size != n + 1:
            raise ValueError(
                f"Got {n} times, {self._prices.size} prices and {self._capacities.size} capacities "
                "but a path needs one capacity more than times"
            )
        if np.any(np.diff(self._times) <= 0):
            raise ValueError("Times must be increasing")
        if np.any(self._increments < 0):
            raise ValueError("Capacity must never decrease")

    @property
    def times(self) -> np.ndarray:
        return self._times

    @property
    def prices(self) -> np.ndarray:
        return self._prices

    @property
    def capacities(self) -> np.ndarray:
        return self._capacities

    @property
    def increments(self) -> np.ndarray:
        return self._increments

    @property
    def held_capacities(self) -> np.ndarray:
        """
        Get the capacity held at each grid time, after the adjustment.
        """
        return self._capacities[1:]

    @property
    def seed(self) -> typing.Optional[int]:
        return self._seed

    @property
    def dt_sim(self) -> float:
        return self._dt_sim

    @property
    def total_installed(self) -> float:
        return float(self._capacities[-1] - self._capacities[0])

    def __eq__(self, value: object) -> bool:
        return (
            isinstance(value, StrategyPath)
            and np.array_equal(self._times, value._times)
            and np.array_equal(self._prices, value._prices)
            and np.array_equal(self._capacities, value._capacities)
            and self._seed == value._seed
            and self._dt_sim == value._dt_sim
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"StrategyPath(n_steps={self._times.size - 1}, dt_sim={self._dt_sim}, seed={self._seed}, "
            f"total_installed={self.total_installed})"
        )


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


def simulation_grid(
    horizon: float,
    dt_sim: float,
) -> np.ndarray:
    """
    Get the grid times `0, dt_sim, ..., horizon`.

    The horizon must be a whole number of steps.

    >>> simulation_grid(1.0, 0.25).tolist()
    [0.0, 0.25, 0.5, 0.75, 1.0]
    """
    if not (math.isfinite(dt_sim) and dt_sim > 0):
        raise ValueError(f"`dt_sim` must be positive but was {dt_sim}")
    if not (math.isfinite(horizon) and horizon >= dt_sim):
        raise ValueError(f"`horizon` must be at least one step ({dt_sim}) but was {horizon}")
    n_steps = round(horizon / dt_sim)
    if abs(n_steps * dt_sim - horizon) > 1e-9 * horizon:
        raise ValueError(f"Inconsistent dt: horizon {horizon} is not a multiple of dt_sim {dt_sim}")
    return dt_sim * np.arange(n_steps + 1)


class PriceStepper:
    """
    Move the prices of many paths over one step of the impacted Ornstein-Uhlenbeck model,
    holding the capacity constant over the step.

    The `exact` scheme samples the exact transition law, `euler` takes an Euler-Maruyama step.
    """

    def __init__(
        self,
        ou: OuParams,
        dt_sim: float,
        scheme: str = "exact",
    ):
        if scheme not in SCHEMES:
            raise ValueError(f"`scheme` must be one of {', '.join(SCHEMES)} but was `{scheme}`")
        self._zeta = ou.zeta
        self._beta = ou.impact
        if scheme == "exact":
            self._decay = math.exp(-ou.kappa * dt_sim)
            self._scale = ou.sigma * math.sqrt(-math.expm1(-2.0 * ou.kappa * dt_sim) / (2.0 * ou.kappa))
        else:
            self._decay = 1.0 - ou.kappa * dt_sim
            self._scale = ou.sigma * math.sqrt(dt_sim)

    def step(
        self,
        prices: np.ndarray,
        capacities: np.ndarray,
        noise: np.ndarray,
    ) -> np.ndarray:
        mean = self._zeta - self._beta * capacities
        return mean + (prices - mean) * self._decay + self._scale * noise


def run_paths(
    econ: EconParams,
    rule: InstallationRule,
    stepper: PriceStepper,
    x0: float,
    y0: float,
    times: np.ndarray,
    noise: np.ndarray,
) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    Simulate the paths driven by the standard normal `noise` (one row per path, one column per step).

    :returns: a tuple with the prices (`n_paths x (n_steps + 1)`) and the capacities (`n_paths x (n_steps + 2)`).
    """
    n_paths, n_steps = noise.shape
    if times.size != n_steps + 1:
        raise ValueError(f"Expected {times.size - 1} noise columns but got {n_steps}")
    prices = np.empty((n_paths, n_steps + 1))
    capacities = np.empty((n_paths, n_steps + 2))
    prices[:, 0] = x0
    capacities[:, 0] = y0
    for k in range(n_steps + 1):
        held = capacities[:, k]
        target = rule.target_capacity(k, times[k], prices[:, k], held)
        capacities[:, k + 1] = np.minimum(np.maximum(held, target), econ.theta)
        if k < n_steps:
            prices[:, k + 1] = stepper.step(prices[:, k], capacities[:, k + 1], noise[:, k])

    if not np.all(np.isfinite(prices)):
        k = int(np.argmax(~np.all(np.isfinite(prices), axis=0)))
        raise SimulationException(
            {"step": k, "time": float(times[k])},
            f"Non-finite prices at t={times[k]}",
        )
    return prices, capacities


def check_start(econ: EconParams, x0: float, y0: float):
    if not math.isfinite(x0):
        raise ValueError(f"Initial price must be finite but was {x0}")
    if not (math.isfinite(y0) and 0.0 <= y0 <= econ.theta):
        raise ValueError(f"Initial capacity {y0} must be in [0, {econ.theta}]")


def path_streams(
    seed: int,
    n_streams: int,
) -> typing.Sequence[np.random.SeedSequence]:
    """
    Derive independent substreams from the master `seed`, one per path (or per antithetic pair).
    """
    return np.random.SeedSequence(seed).spawn(n_streams)


def simulate_strategy(
    ou: OuParams,
    econ: EconParams,
    rule: InstallationRule,
    x0: float,
    y0: float,
    horizon: float,
    dt_sim: float = DEFAULT_DT_SIM,
    seed: int = DEFAULT_SEED,
    scheme: str = "exact",
) -> StrategyPath:
    """
    Simulate one path of the price and capacity under an installation rule.

    The path uses the first substream of `seed`, the same noise as the first path of :func:`payoff_mc`.
    """
    check_start(econ, x0, y0)
    rule.check_compatible(ou.impact, econ.theta)
    times = simulation_grid(horizon, dt_sim)
    stepper = PriceStepper(ou, dt_sim, scheme)
    (stream,) = path_streams(seed, 1)
    noise = np.random.default_rng(stream).standard_normal((1, times.size - 1))
    prices, capacities = run_paths(econ, rule, stepper, x0, y0, times, noise)
    return StrategyPath(times=times, prices=prices[0], capacities=capacities[0], seed=seed, dt_sim=dt_sim)


def simulate_optimal(
    ou: OuParams,
    econ: EconParams,
    fb: FreeBoundary,
    x0: float,
    y0: float,
    horizon: float,
    dt_sim: float = DEFAULT_DT_SIM,
    seed: int = DEFAULT_SEED,
    scheme: str = "exact",
) -> StrategyPath:
    """
    Simulate the optimal installation strategy: whenever the price reaches the boundary,
    install just enough capacity to push the state back to the boundary, up to the cap.

    Without price impact the rule installs the whole remaining capacity the first time the price reaches `x_bar`.

    :param fb: the boundary computed for `ou` and `econ`.
    :param horizon: the simulated time span (years), a multiple of `dt_sim`.
    """
    return simulate_strategy(ou, econ, BoundaryRule(fb), x0, y0, horizon, dt_sim, seed, scheme)
