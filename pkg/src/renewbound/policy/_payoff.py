import dataclasses
import math
import sys
import typing

import numpy as np
from tqdm import tqdm

from renewbound.config import DEFAULT_DT_SIM, DEFAULT_N_PATHS, DEFAULT_SEED, DEFAULT_TAIL_TOL, default_horizon
from renewbound.estimate import OuParams
from renewbound.oufn import EconParams, PsiConfig, log_psi, r_baseline

from ._rules import InstallationRule
from ._simulate import PriceStepper, check_start, path_streams, run_paths, simulation_grid

BLOCK_STREAMS = 256
"""
Number of substreams simulated together.
"""


@dataclasses.dataclass(frozen=True)
class PayoffEstimate:
    """
    Monte Carlo estimate of the expected discounted payoff of an installation strategy.
    """

    mean: float
    """
    The estimated payoff (€).
    """
    std_error: float
    n_paths: int
    horizon: float
    """
    The truncation horizon of the payoff integral (years).
    """
    tail_bound: float
    """
    Bound on the revenue lost by truncating the integral at the horizon (€).
    """
    seed: typing.Optional[int] = None

    def __post_init__(self):
        if not (self.std_error >= 0 and self.tail_bound >= 0):
            raise ValueError(f"Standard error {self.std_error} and tail bound {self.tail_bound} must be non-negative")
        if self.n_paths < 1:
            raise ValueError(f"`n_paths` must be positive but was {self.n_paths}")

    def within(
        self,
        expected: float,
        n_se: float = 3.0,
        rel_tol: float = 0.0,
    ) -> bool:
        """
        Test if `expected` is within `n_se` standard errors of the mean, allowing for the truncated tail
        and a relative tolerance `rel_tol` for the discretization error.
        """
        slack = n_se * self.std_error + self.tail_bound + rel_tol * abs(expected)
        return abs(self.mean - expected) <= slack


def tail_bound(
    ou: OuParams,
    econ: EconParams,
    x0: float,
    horizon: float,
) -> float:
    """
    Bound the discounted revenue earned after `horizon` by `exp(-rho T) a theta s / rho`,
    where the price scale `s` covers the start, the long-run means and three stationary standard deviations.
    """
    scale = max(abs(x0), abs(ou.zeta), abs(ou.zeta - ou.impact * econ.theta)) + 3.0 * ou.stationary_std
    return math.exp(-econ.rho * horizon) * econ.conv_a * econ.theta * scale / econ.rho


def path_payoffs(
    econ: EconParams,
    times: np.ndarray,
    prices: np.ndarray,
    capacities: np.ndarray,
) -> np.ndarray:
    """
    Compute the discounted payoff of each path: the revenue `a S Y` integrated by the trapezoidal rule
    minus the cost `c` of each increment, discounted at its time.

    The capacity held on `[t_k, t_{k+1})` is the one after the adjustment at `t_k`.
    """
    discount = np.exp(-econ.rho * times)
    discounted = prices * discount
    held = capacities[:, 1:-1]
    dt = np.diff(times)
    revenue = econ.conv_a * np.sum(0.5 * dt * (discounted[:, :-1] + discounted[:, 1:]) * held, axis=1)
    cost = econ.cost_c * (np.diff(capacities, axis=1) @ discount)
    return revenue - cost


def monte_carlo(
    ou: OuParams,
    econ: EconParams,
    rule: InstallationRule,
    x0: float,
    y0: float,
    horizon: float,
    n_paths: int,
    dt_sim: float,
    seed: int,
    antithetic: bool,
    scheme: str,
    payoffs: typing.Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray],
    progress: bool = False,
) -> np.ndarray:
    """
    Simulate `n_paths` paths in blocks and reduce each path (or antithetic pair) to its payoffs.

    :param payoffs: a function of the times, prices and capacities of a block that returns
      one or more payoff columns per path.
    :returns: an array with one row per path or per antithetic pair.
    """
    if not isinstance(n_paths, int) or n_paths < 2:
        raise ValueError(f"`n_paths` must be an `int` >= 2 but was {n_paths}")
    if antithetic and n_paths % 2 != 0:
        raise ValueError(f"Antithetic sampling needs an even number of paths but got {n_paths}")
    check_start(econ, x0, y0)
    rule.check_compatible(ou.impact, econ.theta)
    times = simulation_grid(horizon, dt_sim)
    stepper = PriceStepper(ou, dt_sim, scheme)
    n_steps = times.size - 1

    streams = path_streams(seed, n_paths // 2 if antithetic else n_paths)
    starts = range(0, len(streams), BLOCK_STREAMS)
    if progress:
        starts = tqdm(starts, desc="Path blocks", file=sys.stdout, unit=" blocks")

    results = []
    for start in starts:
        block = streams[start : start + BLOCK_STREAMS]
        noise = np.stack([np.random.default_rng(s).standard_normal(n_steps) for s in block])
        if antithetic:
            noise = np.stack([noise, -noise], axis=1).reshape(-1, n_steps)
        prices, capacities = run_paths(econ, rule, stepper, x0, y0, times, noise)
        values = np.asarray(payoffs(times, prices, capacities))
        if antithetic:
            values = 0.5 * (values[0::2] + values[1::2])
        results.append(values)
    return np.concatenate(results)


def summarize_samples(
    samples: np.ndarray,
    n_paths: int,
    horizon: float,
    bound: float,
    seed: int,
) -> PayoffEstimate:
    n = samples.shape[0]
    mean = float(np.mean(samples))
    std_error = float(np.std(samples, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return PayoffEstimate(
        mean=mean,
        std_error=std_error,
        n_paths=n_paths,
        horizon=horizon,
        tail_bound=bound,
        seed=seed,
    )


def payoff_mc(
    ou: OuParams,
    econ: EconParams,
    rule: InstallationRule,
    x0: float,
    y0: float,
    horizon: typing.Optional[float] = None,
    n_paths: int = DEFAULT_N_PATHS,
    dt_sim: float = DEFAULT_DT_SIM,
    seed: int = DEFAULT_SEED,
    antithetic: bool = True,
    scheme: str = "exact",
    max_tail_bound: typing.Optional[float] = None,
    progress: bool = False,
) -> PayoffEstimate:
    """
    Estimate the expected discounted payoff of an installation rule by Monte Carlo.

    Each path, or each antithetic pair of paths, uses its own substream of `seed`,
    and the standard error is computed over the independent units.

    :param rule: the installation rule, such as :class:`BoundaryRule` or a :class:`FixedSchedule`.
    :param horizon: the truncation horizon (years), by default the shortest one
      with a discount factor below the default tail tolerance.
    :param antithetic: `True` to pair each path with its mirror noise.
    :param scheme: `exact` (default) or `euler` price steps.
    :param max_tail_bound: the largest acceptable tail bound (€), or `None` for no limit.
    """
    if horizon is None:
        horizon = default_horizon(econ.rho, dt_sim, DEFAULT_TAIL_TOL)
    bound = tail_bound(ou, econ, x0, horizon)
    if max_tail_bound is not None and bound > max_tail_bound:
        raise ValueError(f"Horizon {horizon} leaves a tail bound {bound:.3e} above the requested {max_tail_bound:.3e}")

    def payoffs(times, prices, capacities):
        return path_payoffs(econ, times, prices, capacities)

    samples = monte_carlo(
        ou, econ, rule, x0, y0, horizon, n_paths, dt_sim, seed, antithetic, scheme, payoffs, progress
    )
    return summarize_samples(samples, n_paths, horizon, bound, seed)


def value_beta0(
    x: float,
    y: float,
    x_bar: float,
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
) -> float:
    """
    Evaluate the value function of the problem without price impact.

    Below the boundary `w = A(y) psi(x) + R(x, y)` with `A(y) = a (theta - y) / ((rho + kappa) psi'(x_bar))`,
    at or above it `w = R(x, theta) - c (theta - y)`.
    The value is continuous across `x_bar` when `x_bar` solves the boundary equation with the normalized cost.
    """
    if ou.impact != 0.0:
        raise ValueError(f"The closed-form value needs zero price impact but beta={ou.impact}")
    config.check_matches(econ, ou)
    if not (math.isfinite(y) and 0.0 <= y <= econ.theta):
        raise ValueError(f"Capacity {y} must be in [0, {econ.theta}]")
    if x >= x_bar:
        return r_baseline(x, econ.theta, econ, ou) - econ.cost_c * (econ.theta - y)
    remaining = econ.theta - y
    if remaining == 0.0:
        return r_baseline(x, y, econ, ou)
    ratio = math.exp(log_psi(x, 0, config) - log_psi(x_bar, 1, config))
    return econ.conv_a * remaining / (econ.rho + ou.kappa) * ratio + r_baseline(x, y, econ, ou)
