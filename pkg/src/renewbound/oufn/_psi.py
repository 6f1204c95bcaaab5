import logging
import math
import sys
import typing

from scipy.integrate import quad

from renewbound._base import SolverException

from ._params import PsiConfig

logger = logging.getLogger(__name__)

LOG_FLOAT_MAX = math.log(sys.float_info.max)
"""
Largest log-value that can be exponentiated without overflow.
"""

ORDERS = (0, 1, 2, 3)


class QuadratureException(SolverException):
    """
    Reports a quadrature that did not reach the requested accuracy.
    """

    pass


class PsiOverflowException(SolverException):
    """
    Reports a fundamental solution value that does not fit into a `float`.

    The ratios of :func:`psi_ratios` and the logarithms of :func:`log_psi` are finite in that case.
    """

    pass


def log_moment(
    p: float,
    z: float,
    rel_tol: float,
    max_nodes: int,
) -> float:
    """
    Compute the logarithm of `M_p(z) = int_0^inf t^(p-1) exp(-t^2/2 + z t) dt` for `p > 0`.

    The integrand is divided by its peak value before the quadrature and the peak is added back
    in the log-domain. For `p < 1` the integrable singularity at `t = 0` is removed
    by the substitution `t = s^(1/p)` on `[0, 1]`.
    """
    if not p > 0:
        raise ValueError(f"`p` must be positive but was {p}")
    half_width = math.sqrt(2.0 * (math.log(1.0 / rel_tol) + 10.0)) + 4.0

    def log_g(t: float) -> float:
        lead = 0.0 if p == 1.0 else (p - 1.0) * math.log(t)
        return lead - 0.5 * t * t + z * t

    disc = z * z + 4.0 * (p - 1.0)
    t_star = 0.5 * (z + math.sqrt(disc)) if disc >= 0 else -1.0

    if p >= 1.0:
        t_star = max(t_star, 0.0)
        shift = 0.0 if t_star == 0.0 else log_g(t_star)
        lo = max(0.0, t_star - half_width)
        hi = t_star + half_width

        def integrand(t: float) -> float:
            if t <= 0.0:
                return math.exp(-shift) if p == 1.0 else 0.0
            return math.exp(log_g(t) - shift)

        parts = [_integrate(integrand, lo, hi, t_star, rel_tol, max_nodes)]
    else:
        inv_p = 1.0 / p
        # The head peaks at `t = clip(z, 0, 1)`, the tail at `max(t_star, 1)`.
        t_head = min(max(z, 0.0), 1.0)
        t_tail = max(t_star, 1.0)
        shift = max(-0.5 * t_head * t_head + z * t_head, log_g(t_tail))

        def head(s: float) -> float:
            t = s**inv_p
            return inv_p * math.exp(-0.5 * t * t + z * t - shift)

        def tail(t: float) -> float:
            return math.exp(log_g(t) - shift)

        parts = [
            _integrate(head, 0.0, 1.0, None, rel_tol, max_nodes),
            _integrate(tail, max(1.0, t_tail - half_width), t_tail + half_width, t_tail, rel_tol, max_nodes),
        ]

    total = math.fsum(val for val, _, _ in parts)
    abserr = sum(err for _, err, _ in parts)
    if not (math.isfinite(total) and total > 0.0):
        raise QuadratureException({"p": p, "z": z, "value": total}, f"Non-finite moment integral for p={p}, z={z}")
    if abserr > max(1e3 * rel_tol, 1e-10) * total:
        messages = "; ".join(msg for _, _, msg in parts if msg)
        raise QuadratureException(
            {"p": p, "z": z, "value": total, "abserr": abserr, "max_nodes": max_nodes},
            f"Quadrature did not converge within {max_nodes} subintervals for p={p}, z={z}: {messages}",
        )
    return shift + math.log(total)


def _integrate(
    func: typing.Callable[[float], float],
    lo: float,
    hi: float,
    peak: typing.Optional[float],
    rel_tol: float,
    max_nodes: int,
) -> typing.Tuple[float, float, typing.Optional[str]]:
    points = (peak,) if peak is not None and lo < peak < hi else None
    out = quad(func, lo, hi, epsabs=0.0, epsrel=rel_tol, limit=max_nodes, points=points, full_output=1)
    message = out[3] if len(out) > 3 else None
    if message:
        logger.debug("Quadrature on [%g, %g]: %s", lo, hi, message)
    return out[0], out[1], message


def _z(x: float, config: PsiConfig) -> float:
    if not math.isfinite(x):
        raise ValueError(f"`x` must be finite but was {x}")
    return config.scale * (x - config.zeta)


def _check_order(order: int):
    if order not in ORDERS:
        raise ValueError(f"`order` must be one of {ORDERS} but was {order}")


def log_psi(
    x: float,
    order: int,
    config: PsiConfig,
) -> float:
    """
    Compute the logarithm of the `order`-th derivative of the increasing fundamental solution
    `psi(x) = 1/Gamma(q) int_0^inf t^(q-1) exp(-t^2/2 + u (x - zeta) t) dt`,
    where `q = rho / kappa` and `u = sqrt(2 kappa) / sigma`.

    All derivatives of `psi` are positive, hence the logarithm is always defined.
    """
    _check_order(order)
    z = _z(x, config)
    q = config.q
    return (
        order * math.log(config.scale)
        + log_moment(q + order, z, config.quad_rel_tol, config.quad_max_nodes)
        - math.lgamma(q)
    )


def psi(
    x: float,
    order: int,
    config: PsiConfig,
) -> float:
    """
    Compute the `order`-th derivative of the increasing fundamental solution at `x`.

    :raises PsiOverflowException: if the value does not fit into a `float`.
    """
    log_value = log_psi(x, order, config)
    if log_value > LOG_FLOAT_MAX:
        raise PsiOverflowException(
            {"x": x, "order": order, "log_value": log_value},
            f"psi^({order})({x}) overflows (log-value {log_value:.1f}), use `log_psi` or `psi_ratios`",
        )
    return math.exp(log_value)


def psi_ratios(
    x: float,
    config: PsiConfig,
    max_order: int = 3,
) -> typing.Sequence[float]:
    """
    Compute the ratios `psi^(k)(x) / psi(x)` for `k = 0, ..., max_order`.

    The ratios share the moment integrals, so the normalizer and the scale factors cancel exactly.
    """
    _check_order(max_order)
    z = _z(x, config)
    q = config.q
    log_moments = [log_moment(q + k, z, config.quad_rel_tol, config.quad_max_nodes) for k in range(max_order + 1)]
    log_u = math.log(config.scale)
    return tuple(math.exp(k * log_u + log_moments[k] - log_moments[0]) for k in range(max_order + 1))


def phi(
    x: float,
    order: int,
    config: PsiConfig,
) -> float:
    """
    Compute the `order`-th derivative of the decreasing fundamental solution,
    the integral representation with exponent `-u (x - zeta) t`.

    Used for diagnostics only.
    """
    _check_order(order)
    z = _z(x, config)
    q = config.q
    log_value = (
        order * math.log(config.scale)
        + log_moment(q + order, -z, config.quad_rel_tol, config.quad_max_nodes)
        - math.lgamma(q)
    )
    if log_value > LOG_FLOAT_MAX:
        raise PsiOverflowException(
            {"x": x, "order": order, "log_value": log_value},
            f"phi^({order})({x}) overflows (log-value {log_value:.1f})",
        )
    return (-1.0) ** order * math.exp(log_value)
