"""Sliding-window differentiator with guaranteed bounds.

A stream of measurements is kept in a ring buffer; each estimate solves
the two bounding linear programs over the most recent window and reports
the interval, its midpoint, and its width.  The closed-form worst-case
profile gives the window horizon beyond which the guaranteed accuracy
stops improving.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import lp
from .constraints import ProblemParams, build_constraint_system


class NotReadyError(RuntimeError):
    """Estimate requested before two measurements are available."""


@dataclass(frozen=True)
class WorstCaseProfile:
    """Closed-form worst-case accuracy of the window-bound differentiator.

    epsilon is the dimensionless window scale 2*sqrt(N/L)/T, Q its floor,
    and K the horizon: the number of steps after which the guaranteed
    half-width h_o(min(k, K)) stops shrinking.
    """

    params: ProblemParams
    epsilon: float
    Q: int
    K: int

    def h_o(self, ell: int) -> float:
        """Half-width bound achievable with a window of ell steps."""
        if ell < 1:
            raise ValueError("window length must be >= 1")
        L, N, T = self.params.L, self.params.N, self.params.T
        return 0.5 * L * T * ell + 2.0 * N / (T * ell)

    def hbar(self, ell: int) -> float:
        """Guaranteed half-width after ell steps: h_o(min(ell, K))."""
        return self.h_o(min(ell, self.K))


def worst_case_profile(params: ProblemParams) -> WorstCaseProfile:
    """Compute epsilon, Q, and the horizon K for strictly positive params.

    h_o is strictly decreasing up to Q and strictly increasing from Q+1,
    so the horizon is whichever of Q, Q+1 gives the smaller half-width;
    the discriminating test is Q^2 + Q >= 4N/(L T^2).
    """
    params.require_positive()
    L, N, T = params.L, params.N, params.T
    epsilon = (2.0 / T) * math.sqrt(N / L)
    Q = int(math.floor(epsilon))
    K = Q if Q * Q + Q >= 4.0 * N / (L * T * T) else Q + 1
    return WorstCaseProfile(params=params, epsilon=epsilon, Q=Q, K=K)


def accuracy_lower_limit(params: ProblemParams) -> float:
    """Floor on the guaranteed worst-case error of any causal differentiator."""
    params.require_positive()
    return 2.0 * math.sqrt(params.N * params.L)


@dataclass(frozen=True)
class DerivativeEstimate:
    """Derivative interval at sample k: bounds, midpoint estimate, width."""

    k: int
    lower: float
    upper: float
    estimate: float
    width: float
    status: str  # "ok" | "inconsistent"


class EstimatorState:
    """Streaming state of the differentiator; one instance per signal.

    Holds the most recent min(k, khat)+1 measurements.  khat defaults to
    the worst-case horizon K: longer windows cannot improve the guaranteed
    accuracy.  Not safe for concurrent mutation; distinct states may be
    driven in parallel.
    """

    def __init__(self, params: ProblemParams, khat: int | None = None):
        if khat is None:
            if params.N == 0.0:
                khat = 1  # zero-noise limit of the horizon formula
            elif params.L == 0.0:
                raise ValueError(
                    "no finite default window for L = 0; pass khat explicitly"
                )
            else:
                khat = worst_case_profile(params).K
        if not isinstance(khat, (int, np.integer)) or khat < 1:
            raise ValueError(f"khat must be an integer >= 1, got {khat!r}")
        self.params = params
        self.khat = int(khat)
        self._buffer: deque[float] = deque(maxlen=self.khat + 1)
        self._count = 0
        self._last_ok: DerivativeEstimate | None = None

    @property
    def k(self) -> int:
        """Index of the newest sample (total samples seen minus one)."""
        return self._count - 1

    @property
    def buffer(self) -> tuple[float, ...]:
        """Measurements currently in the window, oldest first."""
        return tuple(self._buffer)

    @property
    def window_start(self) -> int:
        """Sample index of the oldest buffered measurement."""
        return self.k - (len(self._buffer) - 1)

    def push_measurement(self, value: float) -> None:
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"measurement must be finite, got {value!r}")
        self._buffer.append(value)
        self._count += 1

    def estimate(self) -> DerivativeEstimate:
        """Bound the derivative at the newest sample.

        Solves the max and min programs over the current window.  If the
        window is infeasible the measurements violate the (L, N) model;
        the previous estimate values are held and flagged "inconsistent".
        """
        if self._count < 2:
            raise NotReadyError("need at least two measurements before estimating")
        k_lo = min(self.k, self.khat)
        window = np.array(self._buffer, dtype=float)
        cs = build_constraint_system(self.params, k_lo)
        hi = lp.solve("max", cs, window)
        lo = lp.solve("min", cs, window)
        if "unbounded" in (hi.status, lo.status):
            raise RuntimeError("bounding program unbounded; solver invariant broken")
        if hi.status != "optimal" or lo.status != "optimal":
            prev = self._last_ok
            nan = float("nan")
            return DerivativeEstimate(
                k=self.k,
                lower=prev.lower if prev else nan,
                upper=prev.upper if prev else nan,
                estimate=prev.estimate if prev else nan,
                width=prev.width if prev else nan,
                status="inconsistent",
            )
        result = DerivativeEstimate(
            k=self.k,
            lower=lo.value,
            upper=hi.value,
            estimate=0.5 * (hi.value + lo.value),
            width=hi.value - lo.value,
            status="ok",
        )
        self._last_ok = result
        return result
