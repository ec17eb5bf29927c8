"""
Nonlinear amplitude dynamics of the D gate.

An amplitude evolves as dA/dt = R·A·(|A| - δ)·(1 - |A|): magnitudes below the
unstable fixed point δ decay towards 0, magnitudes above it grow towards 1,
and the phase never changes. The closed-form first integral of this equation
gives both the convergence rate needed for a tolerance and a residual check
for the numerical integrator.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import IntegrationError

logger = logging.getLogger("qnn_toolkit.dynamics")

MAGNITUDE_SLACK = 1e-9
# points this close to 0, δ or 1 are excluded from the residual check
SINGULAR_MARGIN = 1e-9
INTEGRATION_METHODS = ("rk4", "rk45")


@dataclass(frozen=True)
class DGateDynamics:
    """Rate R, fixed point δ, exclusion band (δ0, δ1), tolerance ε and time T."""

    rate: float
    delta: float
    delta0: float
    delta1: float
    eps: float
    time: float

    def __post_init__(self):
        if not 0.0 <= self.delta0 < self.delta < self.delta1 <= 1.0:
            raise ValueError(
                f"need 0 <= delta0 < delta < delta1 <= 1, got "
                f"{self.delta0}, {self.delta}, {self.delta1}")
        if not 0.0 < self.eps or (self.delta0 > 0.0 and self.eps >= self.delta0):
            raise ValueError(f"need 0 < eps < delta0, got eps={self.eps}")
        if self.eps >= 1.0 - self.delta1 and self.delta1 < 1.0:
            raise ValueError(f"need eps < 1 - delta1, got eps={self.eps}")
        if not self.rate > 0.0:
            raise ValueError(f"rate must be positive, got {self.rate}")
        if not self.time > 0.0:
            raise ValueError(f"time must be positive, got {self.time}")

    @classmethod
    def plan(cls, delta: float, delta0: float, delta1: float, eps: Optional[float] = None,
             time: float = 1.0) -> "DGateDynamics":
        """Choose R with solve_rate; ε defaults to min(δ0, 1 - δ1) / 10."""
        if eps is None:
            eps = default_eps(delta0, delta1)
        rate = solve_rate(delta, delta0, delta1, eps, time)
        if rate <= 0.0:
            raise ValueError("the band needs no decay to reach the tolerance; widen it or lower eps")
        return cls(rate, delta, delta0, delta1, eps, time)

    def snap_margin(self, magnitude):
        """Distance from the nearer fixed point 0 or 1; works elementwise on arrays."""
        return np.minimum(magnitude, 1.0 - np.asarray(magnitude))


def default_eps(delta0: float, delta1: float) -> float:
    return min(delta0, 1.0 - delta1) / 10.0


def _check_magnitudes(magnitudes: np.ndarray):
    if np.any(magnitudes > 1.0 + MAGNITUDE_SLACK):
        raise ValueError(f"amplitude magnitude {float(magnitudes.max())} exceeds 1")


def _rhs(values: np.ndarray, rate: float, delta: float) -> np.ndarray:
    mag = np.abs(values)
    return rate * values * (mag - delta) * (1.0 - mag)


def amplitude_rhs(amplitude: complex, dyn: DGateDynamics) -> complex:
    """R·A·(|A| - δ)·(1 - |A|)."""
    values = np.asarray([amplitude], dtype=np.complex128)
    _check_magnitudes(np.abs(values))
    return complex(_rhs(values, dyn.rate, dyn.delta)[0])


def log_implicit_solution_lhs(a, a0, delta: float):
    """Natural log of implicit_solution_lhs; works elementwise on arrays."""
    a = np.asarray(a, dtype=np.float64)
    a0 = np.asarray(a0, dtype=np.float64)
    return (np.log(a / a0) / delta
            - np.log((a - delta) / (a0 - delta)) / (delta * (1.0 - delta))
            + np.log((1.0 - a) / (1.0 - a0)) / (1.0 - delta))


def implicit_solution_lhs(a: float, a0: float, delta: float) -> float:
    """
    (a/a0)^(1/δ) · ((a-δ)/(a0-δ))^(-1/(δ(1-δ))) · ((1-a)/(1-a0))^(1/(1-δ)),
    which equals e^(-Rt) along an exact trajectory from a0.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    for name, value in (("a", a), ("a0", a0)):
        if not 0.0 < value < 1.0 or value == delta:
            raise ValueError(f"{name}={value} must lie in (0, 1) and differ from delta={delta}")
    if (a - delta) * (a0 - delta) < 0.0:
        raise ValueError(f"a={a} and a0={a0} lie on opposite sides of delta={delta}")
    return float(np.exp(log_implicit_solution_lhs(a, a0, delta)))


def rate_components(delta: float, delta0: float, delta1: float, eps: float,
                    time: float) -> Tuple[float, float]:
    """(R0, R1): the rates that bring δ0 down to ε and δ1 up to 1 - ε within ``time``."""
    if not 0.0 < delta0 < delta < delta1 < 1.0:
        raise ValueError(
            f"need 0 < delta0 < delta < delta1 < 1, got {delta0}, {delta}, {delta1}")
    if not 0.0 < eps < min(delta0, 1.0 - delta1):
        raise ValueError(f"need 0 < eps < min(delta0, 1 - delta1), got eps={eps}")
    if not time > 0.0:
        raise ValueError(f"time must be positive, got {time}")
    r0 = -math.log(implicit_solution_lhs(eps, delta0, delta)) / time
    r1 = -math.log(implicit_solution_lhs(1.0 - eps, delta1, delta)) / time
    return r0, r1


def solve_rate(delta: float, delta0: float, delta1: float, eps: float, time: float) -> float:
    """R = max(R0, R1); 0 when neither edge of the band needs to move."""
    r0, r1 = rate_components(delta, delta0, delta1, eps, time)
    rate = max(r0, r1)
    if rate <= 0.0:
        logger.warning("implicit solution already within tolerance at t=0; reporting R = 0")
        return 0.0
    logger.debug("solve_rate: R0=%.12g R1=%.12g", r0, r1)
    return rate


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution: ``values[k]`` is the amplitude at ``times[k]``."""

    times: np.ndarray
    values: np.ndarray
    step: float

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)

    @property
    def final(self):
        return self.values[-1]


def _rk4(start: np.ndarray, rate: float, delta: float, t_end: float, steps: int) -> np.ndarray:
    h = t_end / steps
    out = np.empty((steps + 1,) + start.shape, dtype=np.complex128)
    out[0] = start
    y = start
    for k in range(steps):
        k1 = _rhs(y, rate, delta)
        k2 = _rhs(y + 0.5 * h * k1, rate, delta)
        k3 = _rhs(y + 0.5 * h * k2, rate, delta)
        k4 = _rhs(y + h * k3, rate, delta)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = y
    return out


def closed_form_residual(times: np.ndarray, values: np.ndarray, start: np.ndarray,
                         rate: float, delta: float) -> np.ndarray:
    """
    |lhs(|a(t)|, |a0|, δ)·e^(Rt) - 1| per sample, 0 where the closed form is
    singular (start or sample at a fixed point).
    """
    mag = np.abs(values)
    mag0 = np.broadcast_to(np.abs(start), mag.shape)
    t = times.reshape((-1,) + (1,) * (mag.ndim - 1))

    def clear(x):
        return np.minimum(np.minimum(x, 1.0 - x), np.abs(x - delta)) > SINGULAR_MARGIN

    usable = clear(mag) & clear(mag0)
    residual = np.zeros(mag.shape)
    if np.any(usable):
        log_lhs = log_implicit_solution_lhs(mag[usable], mag0[usable], delta)
        residual[usable] = np.abs(np.expm1(log_lhs + rate * np.broadcast_to(t, mag.shape)[usable]))
    return residual


def integrate_amplitudes(start, dyn: DGateDynamics, t_end: Optional[float] = None,
                         method: str = "rk4", initial_steps: int = 1024,
                         residual_target: float = 1e-4, max_halvings: int = 12) -> Trajectory:
    """
    Integrate several independent amplitudes to ``t_end`` (default T).

    ``rk4`` is a fixed-step classical Runge-Kutta scheme starting at
    t_end / initial_steps; the step is halved until the closed-form residual
    is below ``residual_target`` everywhere, and IntegrationError is raised
    after ``max_halvings`` failed halvings. ``rk45`` integrates the magnitudes
    with scipy's adaptive solver and re-attaches the phase.
    """
    start = np.atleast_1d(np.asarray(start, dtype=np.complex128))
    _check_magnitudes(np.abs(start))
    t_end = dyn.time if t_end is None else float(t_end)
    if t_end < 0.0:
        raise ValueError(f"t_end must be nonnegative, got {t_end}")
    if method not in INTEGRATION_METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {INTEGRATION_METHODS}")
    if t_end == 0.0:
        return Trajectory(np.zeros(1), start[None, :].copy(), 0.0)

    if method == "rk45":
        return _integrate_rk45(start, dyn, t_end, initial_steps)

    steps = initial_steps
    for halving in range(max_halvings + 1):
        values = _rk4(start, dyn.rate, dyn.delta, t_end, steps)
        times = np.linspace(0.0, t_end, steps + 1)
        worst = float(closed_form_residual(times, values, start, dyn.rate, dyn.delta).max())
        if worst < residual_target:
            logger.debug("rk4 accepted %d steps (h=%.3g), residual %.3g", steps,
                         t_end / steps, worst)
            return Trajectory(times, values, t_end / steps)
        logger.debug("rk4 residual %.3g with %d steps; halving", worst, steps)
        steps *= 2
    raise IntegrationError(
        f"step underflow: residual target {residual_target} not met after "
        f"{max_halvings} halvings (h={t_end / (steps // 2):.3g})")


def _integrate_rk45(start: np.ndarray, dyn: DGateDynamics, t_end: float,
                    samples: int) -> Trajectory:
    mag0 = np.abs(start)
    phase = np.where(mag0 > 0.0, start / np.where(mag0 > 0.0, mag0, 1.0), 1.0)
    times = np.linspace(0.0, t_end, samples + 1)

    def rhs(_t, r):
        return dyn.rate * r * (r - dyn.delta) * (1.0 - r)

    solution = solve_ivp(rhs, (0.0, t_end), mag0, method="RK45", t_eval=times,
                         rtol=1e-10, atol=1e-13)
    if not solution.success:
        raise IntegrationError(f"rk45 reference integration failed: {solution.message}")
    values = solution.y.T * phase[None, :]
    return Trajectory(times, values, t_end / samples)


def integrate_amplitude(a0: complex, dyn: DGateDynamics, t_end: Optional[float] = None,
                        method: str = "rk4", **options) -> Trajectory:
    """Single-amplitude form of integrate_amplitudes; ``values`` is one-dimensional."""
    trajectory = integrate_amplitudes([a0], dyn, t_end, method, **options)
    return Trajectory(trajectory.times, trajectory.values[:, 0], trajectory.step)


def trajectory_table(a0: float, dyn: DGateDynamics, points: int = 11):
    """
    Rows (t, |a|, implicit lhs, e^(-Rt)) at ``points`` evenly spaced times up
    to T. The lhs column is None where the closed form is singular.
    """
    trajectory = integrate_amplitude(a0, dyn)
    picks = np.linspace(0, trajectory.times.shape[0] - 1, max(points, 2)).round().astype(int)
    rows = []
    for k in picks:
        t = float(trajectory.times[k])
        mag = float(abs(trajectory.values[k]))
        try:
            lhs: Optional[float] = implicit_solution_lhs(mag, abs(a0), dyn.delta)
        except ValueError:
            lhs = None
        rows.append((t, mag, lhs, math.exp(-dyn.rate * t)))
    return rows
