"""
Characteristic functions of the conditional work distributions.

Spectral sums work for any complex argument; trace forms are the operator
expressions the interferometry circuits estimate.
"""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Literal

import numpy as np

from linalg.core import LOG_FLOAT_MAX, dagger
from models.distribution import CharacteristicValue, SweepPoint, WorkDistribution
from models.system import Direction, Endpoint, SystemSpec
from thermo.states import conditional_spectrum, conditional_thermal_state, log_partition
from utils.errors import DivisionNearZeroError, NumericalOverflowError
from utils.logger import get_logger

logger = get_logger(__name__)

DIVISION_FLOOR = 1e-14

TraceForm = Literal["forward", "backward", "backward_shifted"]


def cf_spectral(
    dist: WorkDistribution, u_arg: complex, direction: Direction | None = None
) -> CharacteristicValue:
    """
    Sum form of the characteristic function.

    forward:  sum_i p_i exp(+i u W_i)
    backward: sum_i q_i exp(-i u W_i)

    Args:
        dist: Atomic work distribution
        u_arg: Complex argument
        direction: Sign convention; defaults to the distribution's own direction

    Returns:
        CharacteristicValue at u_arg
    """
    direction = direction or dist.direction
    sign = 1.0 if direction == Direction.FORWARD else -1.0
    u_arg = complex(u_arg)
    value = np.sum(dist.probabilities * np.exp(sign * 1j * u_arg * dist.works))
    return CharacteristicValue(u_arg=u_arg, value=complex(value))


def cf_trace(spec: SystemSpec, u: float, which: TraceForm = "forward") -> CharacteristicValue:
    """
    Trace form of the characteristic function.

    forward:          tr[U^dag e^{iuG_tau} U e^{-iuG0} rho~_0]
    backward:         tr[U e^{iuG0} U^dag e^{-iuG_tau} rho~_tau]
    backward_shifted: tr[U e^{-iuG0} e^{-beta G0} U^dag e^{iuG_tau} e^{beta G_tau} rho~_tau],
                      i.e. C_b(-u + i beta)

    G0 equals H0 in the default basis. In the shifted form e^{beta G_tau}
    cancels against rho~_tau, leaving tr[U e^{(-iu-beta)G0} U^dag e^{iuG_tau}] / Z~_tau;
    e^{-beta G0} is rescaled by its largest eigenvalue and the scale is
    restored at the end, so low temperatures do not overflow intermediates.
    """
    u = float(u)
    beta = spec.beta
    g0 = conditional_spectrum(spec, Endpoint.INITIAL)
    g_tau = conditional_spectrum(spec, Endpoint.FINAL)
    u_op, u_dag = spec.u_evol, dagger(spec.u_evol)

    if which == "forward":
        rho, _ = conditional_thermal_state(spec, Endpoint.INITIAL)
        op = u_dag @ g_tau.exponential(1j * u) @ u_op @ g0.exponential(-1j * u)
        u_arg = complex(u)
    elif which == "backward":
        rho, _ = conditional_thermal_state(spec, Endpoint.FINAL)
        op = u_op @ g0.exponential(1j * u) @ u_dag @ g_tau.exponential(-1j * u)
        u_arg = complex(u)
    elif which == "backward_shifted":
        shift = -beta * float(np.min(g0.values))
        op = u_op @ g0.exponential(-1j * u - beta, shift=shift) @ u_dag @ g_tau.exponential(1j * u)
        scaled = complex(np.trace(op))
        value = _rescale(scaled, shift - log_partition(g_tau.values, beta))
        return CharacteristicValue(u_arg=complex(-u, beta), value=value)
    else:
        raise ValueError(f"Unknown trace form {which!r}")

    return CharacteristicValue(u_arg=u_arg, value=complex(np.trace(op @ rho)))


def _rescale(value: complex, log_scale: float) -> complex:
    """value * exp(log_scale) without overflowing intermediates."""
    if value == 0:
        return 0j
    log_mag = float(np.log(abs(value))) + log_scale
    if log_mag > LOG_FLOAT_MAX:
        raise NumericalOverflowError(f"Characteristic function magnitude e^{log_mag:.6g} overflows")
    return complex(np.exp(log_mag) * value / abs(value))


def _sweep_point(spec: SystemSpec, u: float) -> SweepPoint:
    forward = cf_trace(spec, u, "forward").value
    backward = cf_trace(spec, u, "backward_shifted").value
    if abs(backward) <= DIVISION_FLOOR:
        raise DivisionNearZeroError(f"|C_b(-u + i beta)| = {abs(backward):.3e} at u = {u}")
    return SweepPoint(u=float(u), forward=forward, backward_shifted=backward)


def symmetry_ratio(spec: SystemSpec, u: float) -> complex:
    """
    C_f(u) / C_b(-u + i beta).

    Independent of u and equal to Z~_tau / Z~_0 in exact arithmetic.
    """
    return _sweep_point(spec, u).ratio


def sweep_ratio(spec: SystemSpec, us: Sequence[float], workers: int = 1) -> list[SweepPoint]:
    """
    Evaluate both characteristic functions and their ratio over a u grid.

    Args:
        spec: Problem instance
        us: Grid of real arguments
        workers: Threads used for grid points

    Returns:
        One SweepPoint per grid value, in grid order
    """
    logger.debug("Sweeping %d grid points on %d worker(s)", len(us), workers)
    if workers <= 1:
        return [_sweep_point(spec, u) for u in us]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda u: _sweep_point(spec, u), us))
