import typing

import numpy as np

from renewbound.config import DEFAULT_DT_SIM, DEFAULT_N_PATHS, DEFAULT_SEED
from renewbound.estimate import OuParams
from renewbound.oufn import EconParams

from ._payoff import PayoffEstimate, monte_carlo, path_payoffs, summarize_samples, tail_bound
from ._rules import FixedSchedule
from ._simulate import simulation_grid


class SocialPlannerProfile:
    """
    Initial capacities and fixed installation strategies of `N` producers that share one price.

    The aggregate capacity `gamma + nu(t)` must never exceed the cap `theta`.

    :param initial_capacities: the initial capacity `y_i` of each producer (MW).
    :param strategies: the increments of each producer at the simulation steps (MW).
    :param theta: the cap on the aggregate capacity (MW).
    """

    def __init__(
        self,
        initial_capacities: typing.Sequence[float],
        strategies: typing.Sequence[typing.Sequence[float]],
        theta: float,
    ):
        y = np.array(initial_capacities, dtype=float)
        if y.ndim != 1 or y.size == 0:
            raise ValueError("The profile needs at least one producer")
        if len(strategies) != y.size:
            raise ValueError(f"Got {y.size} producers but {len(strategies)} strategies")
        increments = [np.array(s, dtype=float) for s in strategies]
        lengths = {s.size for s in increments}
        if len(lengths) != 1 or 0 in lengths:
            raise ValueError(f"All strategies must have the same nonzero length but got lengths {sorted(lengths)}")
        inc = np.stack(increments)
        if not (np.all(np.isfinite(y)) and np.all(np.isfinite(inc))) or np.any(y < 0) or np.any(inc < 0):
            raise ValueError("Capacities and increments must be finite and non-negative")

        self._y = y
        self._inc = inc
        self._theta = float(theta)
        self._nu = np.cumsum(inc.sum(axis=0))
        peak = self.gamma + self._nu[-1]
        if peak > self._theta:
            raise ValueError(f"The aggregate capacity reaches {peak} MW above the cap {self._theta} MW")
        for arr in (self._y, self._inc, self._nu):
            arr.setflags(write=False)

    @property
    def initial_capacities(self) -> np.ndarray:
        return self._y

    @property
    def strategies(self) -> np.ndarray:
        """
        Get the increments as an array with one row per producer.
        """
        return self._inc

    @property
    def gamma(self) -> float:
        """
        Get the aggregate initial capacity.
        """
        return float(self._y.sum())

    @property
    def aggregate_nu(self) -> np.ndarray:
        """
        Get the aggregate installed capacity `nu` at each step.
        """
        return self._nu

    @property
    def theta(self) -> float:
        return self._theta

    @property
    def n_producers(self) -> int:
        return self._y.size

    def levels(self, n_levels: int) -> np.ndarray:
        """
        Get the capacity of each producer at each of `n_levels` steps, holding the last level.
        """
        if self._inc.shape[1] > n_levels:
            raise ValueError(f"The strategies have {self._inc.shape[1]} steps but the grid has {n_levels}")
        padded = np.zeros((self.n_producers, n_levels))
        padded[:, : self._inc.shape[1]] = self._inc
        return self._y[:, None] + np.cumsum(padded, axis=1)


def aggregate_social(
    profile: SocialPlannerProfile,
    ou: OuParams,
    econ: EconParams,
    x0: float,
    horizon: float,
    n_paths: int = DEFAULT_N_PATHS,
    seed: int = DEFAULT_SEED,
    dt_sim: float = DEFAULT_DT_SIM,
    antithetic: bool = True,
    scheme: str = "exact",
) -> typing.Tuple[PayoffEstimate, typing.Tuple[PayoffEstimate, ...]]:
    """
    Estimate the payoff of every producer and of the social planner on shared price paths.

    The price is driven by the aggregate capacity. Each producer earns the revenue of its own capacity
    and pays for its own increments, so the planner's payoff is the sum of the producers' payoffs on every path.

    :returns: a tuple with the aggregate estimate and the per-producer estimates.
    """
    if profile.theta != econ.theta:
        raise ValueError(f"The profile cap {profile.theta} differs from the capacity cap {econ.theta}")
    times = simulation_grid(horizon, dt_sim)
    levels = profile.levels(times.size)
    aggregate_rule = FixedSchedule(levels.sum(axis=0))

    def payoffs(times, prices, capacities):
        columns = [path_payoffs(econ, times, prices, capacities)]
        for y_i, producer in zip(profile.initial_capacities, levels):
            own = np.broadcast_to(np.concatenate(([y_i], producer)), capacities.shape)
            columns.append(path_payoffs(econ, times, prices, own))
        return np.column_stack(columns)

    samples = monte_carlo(
        ou, econ, aggregate_rule, x0, profile.gamma, horizon, n_paths, dt_sim, seed, antithetic, scheme, payoffs
    )
    estimates = [
        summarize_samples(samples[:, j], n_paths, horizon, tail_bound(ou, econ, x0, horizon), seed)
        for j in range(samples.shape[1])
    ]
    return estimates[0], tuple(estimates[1:])


def pareto_dominates(
    payoffs_a: typing.Sequence[float],
    payoffs_b: typing.Sequence[float],
) -> bool:
    """
    Test if the payoffs `a` Pareto-dominate the payoffs `b`: no producer is worse off and at least one is better off.

    >>> pareto_dominates([2, 2], [1, 2])
    True
    >>> pareto_dominates([2, 1], [1, 2])
    False
    """
    a = np.asarray(payoffs_a, dtype=float)
    b = np.asarray(payoffs_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"Cannot compare {a.size} payoffs with {b.size} payoffs")
    return bool(np.all(a >= b) and np.any(a > b))
