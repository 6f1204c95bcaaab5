import enum
import math
import typing

import numpy as np
import pandas as pd

from renewbound.oufn import BoundaryVariants


class BoundaryKind(enum.Enum):
    """
    `BoundaryKind` tells if the free boundary depends on the capacity.
    """

    CONSTANT = "constant"
    """
    The boundary is a single price, as is the case without price impact.
    """

    CURVE = "curve"
    """
    The boundary is a nondecreasing function of the capacity.
    """


class FreeBoundary:
    """
    `FreeBoundary` tabulates the price threshold `F(y)` that separates the waiting region `x < F(y)`
    from the installation region `x >= F(y)` on a capacity grid spanning `[0, theta]`.

    The shifted boundary `F_hat(y) = F(y) + beta y` ends at the terminal value `F_hat(theta) = terminal_x`.
    Values between the grid points are interpolated linearly.
    """

    def __init__(
        self,
        kind: BoundaryKind,
        y_grid: typing.Sequence[float],
        f_values: typing.Sequence[float],
        fhat_values: typing.Sequence[float],
        terminal_x: float,
        step_h: float,
        beta: float,
        variant_tags: BoundaryVariants,
        diagnostics: typing.Optional[typing.Mapping[str, typing.Any]] = None,
    ):
        assert isinstance(kind, BoundaryKind)
        self._kind = kind
        self._y = _frozen_array(y_grid)
        self._f = _frozen_array(f_values)
        self._fhat = _frozen_array(fhat_values)
        self._terminal_x = float(terminal_x)
        self._step_h = float(step_h)
        self._beta = float(beta)
        assert isinstance(variant_tags, BoundaryVariants)
        self._variants = variant_tags
        self._diagnostics = dict(diagnostics) if diagnostics is not None else {}
        self._check()

    def _check(self):
        n = self._y.size
        if n < 2 or self._f.size != n or self._fhat.size != n:
            raise ValueError(f"Grid ({n}), F ({self._f.size}), and F_hat ({self._fhat.size}) must have equal sizes >= 2")
        if not (np.all(np.isfinite(self._y)) and np.all(np.isfinite(self._f)) and np.all(np.isfinite(self._fhat))):
            raise ValueError("Boundary values must be finite")
        if self._y[0] != 0.0 or np.any(np.diff(self._y) <= 0):
            raise ValueError("Capacity grid must be increasing and start at 0")
        if not (self._step_h > 0 and self._beta >= 0):
            raise ValueError(f"Invalid step {self._step_h} or impact {self._beta}")
        if self._fhat[-1] != self._terminal_x:
            raise ValueError(f"F_hat(theta)={self._fhat[-1]} must equal the terminal value {self._terminal_x}")
        scale = np.maximum(1.0, np.abs(self._f))
        if np.any(np.abs(self._f - (self._fhat - self._beta * self._y)) > 1e-10 * scale):
            raise ValueError("F must equal F_hat - beta y")
        if self._kind == BoundaryKind.CONSTANT and np.any(self._f != self._terminal_x):
            raise ValueError("A constant boundary must equal the terminal value everywhere")
        if not self.is_monotone():
            i = int(np.flatnonzero(np.diff(self._f) < 0)[0])
            raise ValueError(f"Boundary must be nondecreasing but F decreases after y={self._y[i]}")

    @property
    def kind(self) -> BoundaryKind:
        return self._kind

    @property
    def y_grid(self) -> np.ndarray:
        """
        Get the increasing capacity grid (MW), from 0 to `theta`.
        """
        return self._y

    @property
    def f_values(self) -> np.ndarray:
        """
        Get the boundary prices `F(y)` (€/MWh) on the grid.
        """
        return self._f

    @property
    def fhat_values(self) -> np.ndarray:
        return self._fhat

    @property
    def terminal_x(self) -> float:
        return self._terminal_x

    @property
    def step_h(self) -> float:
        return self._step_h

    @property
    def beta(self) -> float:
        return self._beta

    @property
    def theta(self) -> float:
        return float(self._y[-1])

    @property
    def variant_tags(self) -> BoundaryVariants:
        return self._variants

    @property
    def diagnostics(self) -> typing.Mapping[str, typing.Any]:
        """
        Get solver details, such as the tolerances, the root bracket and the number of Euler sub-steps.
        """
        return self._diagnostics

    @property
    def f_zero(self) -> float:
        return float(self._f[0])

    def is_monotone(self) -> bool:
        return bool(np.all(np.diff(self._f) >= 0))

    def evaluate(self, y: typing.Union[float, np.ndarray]) -> typing.Union[float, np.ndarray]:
        """
        Evaluate `F` at capacity `y` by linear interpolation.
        """
        out = np.interp(y, self._y, self._f)
        return float(out) if np.ndim(out) == 0 else out

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"y_mw": self._y, "f_eur_mwh": self._f, "fhat_eur_mwh": self._fhat})

    def __eq__(self, value: object) -> bool:
        return (
            isinstance(value, FreeBoundary)
            and self._kind == value._kind
            and np.array_equal(self._y, value._y)
            and np.array_equal(self._f, value._f)
            and np.array_equal(self._fhat, value._fhat)
            and self._terminal_x == value._terminal_x
            and self._step_h == value._step_h
            and self._beta == value._beta
            and self._variants == value._variants
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"FreeBoundary(kind={self._kind.value}, n_points={self._y.size}, terminal_x={self._terminal_x}, "
            f"f_zero={self.f_zero}, step_h={self._step_h}, beta={self._beta}, variant_tags={self._variants})"
        )


def _frozen_array(values: typing.Sequence[float]) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


class BracketInterval(typing.NamedTuple):
    """
    Price interval on which the terminal-condition target changes sign.
    """

    lo: float
    hi: float
    widenings: int = 0
    """
    Number of geometric widenings needed to find the sign change.
    """

    def check(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ValueError(f"Invalid bracket [{self.lo}, {self.hi}]")


def boundary_inverse(
    fb: FreeBoundary,
    price: typing.Union[float, np.ndarray],
) -> typing.Union[float, np.ndarray]:
    """
    Get the smallest capacity `y` with `F(y) >= price`.

    Returns `0` if the price is at or below `F(0)` and `theta` if the price exceeds `F(theta)`.
    The inverse is exact on the grid and linear in between.
    """
    f = fb.f_values
    if np.any(np.diff(f) < 0):
        raise ValueError("Cannot invert a non-monotone boundary")
    p = np.asarray(price, dtype=float)
    y = fb.y_grid

    idx = np.clip(np.searchsorted(f, p, side="left"), 1, f.size - 1)
    f_lo, f_hi = f[idx - 1], f[idx]
    y_lo, y_hi = y[idx - 1], y[idx]
    with np.errstate(divide="ignore", invalid="ignore"):
        frac = np.where(f_hi > f_lo, (p - f_lo) / (f_hi - f_lo), 1.0)
    out = y_lo + np.clip(frac, 0.0, 1.0) * (y_hi - y_lo)
    out = np.where(p <= f[0], 0.0, out)
    out = np.where(p > f[-1], y[-1], out)
    return float(out) if out.ndim == 0 else out
