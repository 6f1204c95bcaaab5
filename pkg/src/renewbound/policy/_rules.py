import abc
import typing

import numpy as np

from renewbound.boundary import BoundaryKind, FreeBoundary, boundary_inverse


class InstallationRule(metaclass=abc.ABCMeta):
    """
    `InstallationRule` decides the capacity to reach at each step of a simulation.

    The simulation raises the capacity of every path to `max(current, target)`, clamped at the cap,
    so a rule cannot uninstall capacity.
    """

    @property
    @abc.abstractmethod
    def name(self) -> str:
        """
        Get a short name of the rule.
        """
        pass

    @abc.abstractmethod
    def target_capacity(
        self,
        step: int,
        time: float,
        prices: np.ndarray,
        capacities: np.ndarray,
    ) -> np.ndarray:
        """
        Get the target capacity of each path.

        :param step: the index of the simulation step.
        :param time: the time of the step (years).
        :param prices: the prices of all paths at the step (€/MWh).
        :param capacities: the capacities of all paths before the adjustment (MW).
        """
        pass

    def check_compatible(self, beta: float, theta: float):
        """
        Check that the rule can drive a price model with impact slope `beta` and capacity cap `theta`.
        """
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class NeverInstall(InstallationRule):
    """
    Keep the initial capacity forever.
    """

    @property
    def name(self) -> str:
        return "never_install"

    def target_capacity(self, step, time, prices, capacities):
        return capacities


class InstallAtStart(InstallationRule):
    """
    Install the whole admissible capacity at time zero, regardless of the price.
    """

    def __init__(self, theta: float):
        self._theta = float(theta)

    @property
    def name(self) -> str:
        return "install_at_start"

    def target_capacity(self, step, time, prices, capacities):
        return np.full_like(capacities, self._theta)

    def __repr__(self) -> str:
        return f"InstallAtStart(theta={self._theta})"


class BoundaryRule(InstallationRule):
    """
    Follow the free boundary: install just enough to bring the state back into the waiting region.

    With a constant boundary this is the jump rule: the whole remaining capacity is installed
    the first time the price reaches the boundary.
    """

    def __init__(self, fb: FreeBoundary):
        assert isinstance(fb, FreeBoundary)
        self._fb = fb

    @property
    def name(self) -> str:
        return "boundary"

    @property
    def boundary(self) -> FreeBoundary:
        return self._fb

    def target_capacity(self, step, time, prices, capacities):
        if self._fb.kind == BoundaryKind.CONSTANT:
            return np.where(prices >= self._fb.terminal_x, self._fb.theta, capacities)
        return boundary_inverse(self._fb, prices)

    def check_compatible(self, beta: float, theta: float):
        if self._fb.theta != theta:
            raise ValueError(f"The boundary ends at {self._fb.theta} but the capacity cap is {theta}")
        if self._fb.beta != beta:
            raise ValueError(
                f"A {self._fb.kind.value} boundary computed with beta={self._fb.beta} cannot drive a model with beta={beta}"
            )

    def __repr__(self) -> str:
        return f"BoundaryRule(fb={self._fb})"


class FixedSchedule(InstallationRule):
    """
    Follow a fixed capacity schedule, the same on every path.

    The schedule holds its last level after its end.

    :param levels: the capacity (MW) to reach at each step.
    """

    def __init__(self, levels: typing.Sequence[float]):
        levels = np.array(levels, dtype=float)
        if levels.ndim != 1 or levels.size == 0:
            raise ValueError("The schedule must be a nonempty sequence")
        if not np.all(np.isfinite(levels)) or np.any(levels < 0) or np.any(np.diff(levels) < 0):
            raise ValueError("The schedule must be finite, non-negative and nondecreasing")
        levels.setflags(write=False)
        self._levels = levels

    @staticmethod
    def from_increments(
        y0: float,
        increments: typing.Sequence[float],
    ) -> "FixedSchedule":
        """
        Build the schedule `y0 + cumsum(increments)`.
        """
        return FixedSchedule(y0 + np.cumsum(np.asarray(increments, dtype=float)))

    @property
    def name(self) -> str:
        return "fixed_schedule"

    @property
    def levels(self) -> np.ndarray:
        return self._levels

    def target_capacity(self, step, time, prices, capacities):
        level = self._levels[min(step, self._levels.size - 1)]
        return np.full_like(capacities, level)

    def __repr__(self) -> str:
        return f"FixedSchedule(n_levels={self._levels.size}, final={self._levels[-1]})"
