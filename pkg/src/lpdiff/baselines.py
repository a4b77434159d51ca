"""Discrete-time comparison differentiators and the benchmark noise signal.

A linear second-order observer with repeated eigenvalues (stepped with the
implicit Euler method, unconditionally stable) and a first-order robust
exact differentiator (stepped with explicit or semi-implicit Euler) serve
as baselines for the window-bound estimator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constraints import ProblemParams

HIGH_GAIN_ACCURACY_FACTOR = 4.0 * math.exp(-0.5)  # ~2.43, times sqrt(N*L)

SCHEMES = ("explicit", "semi_implicit")


@dataclass(frozen=True)
class HighGainState:
    """Observer state: signal estimate y1, derivative estimate y2, time constant tau."""

    y1: float
    y2: float
    tau: float

    def __post_init__(self):
        if self.tau <= 0.0:
            raise ValueError("tau must be positive")


@dataclass(frozen=True)
class SlidingModeState:
    """Differentiator state y1, y2 (derivative output) with gains k1, k2."""

    y1: float
    y2: float
    k1: float
    k2: float

    def __post_init__(self):
        if self.k1 <= 0.0 or self.k2 <= 0.0:
            raise ValueError("gains k1 and k2 must be positive")


def high_gain_default_tau(params: ProblemParams) -> float:
    """Time constant minimizing the observer's asymptotic error bound.

    The optimum is exp(-1/2)*sqrt(N/L); the corresponding accuracy is
    HIGH_GAIN_ACCURACY_FACTOR * sqrt(N*L).
    """
    params.require_positive()
    return math.exp(-0.5) * math.sqrt(params.N / params.L)


def high_gain_asymptotic_accuracy(params: ProblemParams) -> float:
    """Best asymptotic error bound of the tuned observer."""
    params.require_positive()
    return HIGH_GAIN_ACCURACY_FACTOR * math.sqrt(params.N * params.L)


def high_gain_step(state: HighGainState, m: float, T: float) -> HighGainState:
    """One implicit-Euler step of the observer driven by measurement m.

    The implicit update y+ = y + T*f(y+, m) is a constant 2x2 linear
    system per (tau, T) and is solved in closed form; the step map is a
    contraction for every T > 0.
    """
    if T <= 0.0:
        raise ValueError("T must be positive")
    tau = state.tau
    alpha = 2.0 * T / tau
    beta = T / (tau * tau)
    denom = 1.0 + alpha + T * beta  # = (1 + T/tau)^2 > 0
    y1 = (state.y1 + T * state.y2 + (alpha + T * beta) * m) / denom
    y2 = state.y2 + beta * (m - y1)
    return HighGainState(y1=y1, y2=y2, tau=tau)


def sliding_mode_defaults(params: ProblemParams) -> tuple[float, float]:
    """Gains k1 = 2r, k2 = r^2 from the robustness factor r = 1.5*sqrt(L)."""
    if params.L <= 0.0:
        raise ValueError("sliding-mode gains require L > 0")
    r = 1.5 * math.sqrt(params.L)
    return 2.0 * r, r * r


def _sign(x: float) -> float:
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0  # keeps the origin an equilibrium


def sliding_mode_step(
    state: SlidingModeState, m: float, T: float, scheme: str = "semi_implicit"
) -> SlidingModeState:
    """One Euler step of the robust exact differentiator.

    explicit evaluates both right-hand sides at the current state;
    semi_implicit updates y2 first (sign taken at the current error) and
    then advances y1 with the new y2.
    """
    if T <= 0.0:
        raise ValueError("T must be positive")
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    e = m - state.y1
    s = _sign(e)
    correction = state.k1 * math.sqrt(abs(e)) * s
    if scheme == "explicit":
        y1 = state.y1 + T * (correction + state.y2)
        y2 = state.y2 + T * state.k2 * s
    else:
        y2 = state.y2 + T * state.k2 * s
        y1 = state.y1 + T * (correction + y2)
    return SlidingModeState(y1=y1, y2=y2, k1=state.k1, k2=state.k2)


def benchmark_noise(t: float, params: ProblemParams) -> float:
    """Periodic clipped-parabola noise used by the simulation harness.

    Within each period of length 6*sqrt(N/L) the noise drops from N along
    a downward parabola of curvature L (clipped at -N) and then rests at
    N; the amplitude never exceeds N.
    """
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    params.require_positive()
    L, N = params.L, params.N
    c = 6.0 * math.sqrt(N / L)
    s = t - c * math.floor(t / c)
    if s < 2.0 * math.sqrt(N / L):
        return max(-N, N - L * s * s)
    return N
