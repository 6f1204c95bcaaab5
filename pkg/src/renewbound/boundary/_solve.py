import functools
import logging
import math
import typing

import scipy.optimize

from renewbound._base import SolverException
from renewbound.config import DEFAULT_ROOT_TOL
from renewbound.estimate import OuParams
from renewbound.oufn import EconParams, PsiConfig, acca_target, cost_bar, h_eval, psi_ratios

from ._model import BracketInterval

MAX_WIDENINGS = 60
BISECT_MAX_ITER = 500

logger = logging.getLogger(__name__)


class BracketException(SolverException):
    """
    Reports that no sign change of the boundary target was found.
    """

    pass


def bracket(
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
) -> BracketInterval:
    """
    Find an interval on which the terminal-condition target changes sign.

    The search starts at `(c_bar, c_bar + psi(c_bar) / psi'(c_bar))`.
    If the target does not change sign there, the failing end is widened geometrically,
    up to a bounded number of times, and the number of widenings is recorded.

    :raises BracketException: if no sign change is found.
    """
    target = _terminal_target(econ, ou, config)
    c_bar = cost_bar(econ, ou, config)
    r = psi_ratios(c_bar, config, max_order=1)
    lo, hi = c_bar, c_bar + 1.0 / r[1]
    return _widen(target, lo, hi)


def _widen(
    target: typing.Callable[[float], float],
    lo: float,
    hi: float,
) -> BracketInterval:
    f_lo, f_hi = target(lo), target(hi)
    width = hi - lo
    widenings = 0
    while not (f_lo > 0.0 > f_hi):
        if widenings >= MAX_WIDENINGS or not math.isfinite(width):
            raise BracketException(
                {"lo": lo, "hi": hi, "target_lo": f_lo, "target_hi": f_hi, "widenings": widenings},
                f"No sign change of the boundary target on [{lo}, {hi}] after {widenings} widenings",
            )
        widenings += 1
        width *= 2.0
        if f_lo <= 0.0:
            lo -= width
            f_lo = target(lo)
        if f_hi >= 0.0:
            hi += width
            f_hi = target(hi)

    if widenings:
        logger.warning("Widened the boundary bracket %d times to [%g, %g]", widenings, lo, hi)
    return BracketInterval(lo=lo, hi=hi, widenings=widenings)


def _terminal_target(
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
) -> typing.Callable[[float], float]:
    config.check_matches(econ, ou)
    if ou.impact < 0:
        raise ValueError(f"The price impact must be non-negative but was {ou.impact}")
    return functools.partial(acca_target, econ=econ, ou=ou, config=config)


def _bisect(
    target: typing.Callable[[float], float],
    interval: BracketInterval,
    tol: float,
) -> float:
    if not (math.isfinite(tol) and tol > 0):
        raise ValueError(f"`tol` must be positive but was {tol}")
    interval.check()
    return float(scipy.optimize.bisect(target, interval.lo, interval.hi, xtol=tol, maxiter=BISECT_MAX_ITER))


def solve_constant_boundary(
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
    tol: float = DEFAULT_ROOT_TOL,
) -> float:
    """
    Solve `H(x) = 0` by bisection for the constant boundary `x_bar` of the problem without price impact.

    :param tol: the width of the final bisection interval, in €/MWh.
    :raises BracketException: if the root cannot be bracketed.
    """
    if ou.impact != 0.0:
        raise ValueError(f"The constant boundary needs zero price impact but beta={ou.impact}")
    config.check_matches(econ, ou)
    interval = bracket(econ, ou, config)
    return _bisect(functools.partial(h_eval, econ=econ, ou=ou, config=config), interval, tol)


def solve_terminal(
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
    tol: float = DEFAULT_ROOT_TOL,
) -> float:
    """
    Solve the terminal condition for `x_hat = F_hat(theta)` by bisection.

    Without price impact the result coincides with :func:`solve_constant_boundary`.
    """
    x_hat, _ = solve_terminal_bracketed(econ, ou, config, tol)
    return x_hat


def solve_terminal_bracketed(
    econ: EconParams,
    ou: OuParams,
    config: PsiConfig,
    tol: float = DEFAULT_ROOT_TOL,
) -> typing.Tuple[float, BracketInterval]:
    """
    Same as :func:`solve_terminal` but return the bracket along with the root.
    """
    target = _terminal_target(econ, ou, config)
    interval = bracket(econ, ou, config)
    return _bisect(target, interval, tol), interval
