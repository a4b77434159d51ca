"""Independent generators and verifiers for the window-bound differentiator.

Three kinds of oracle live here: the extremal piecewise-parabolic signal
that attains the worst-case accuracy with all-zero measurements, seeded
random signals that satisfy the model bounds exactly by construction, and
an exhaustive vertex-enumeration bound for tiny windows that provides an
LP-free cross-check of the simplex solver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import lp
from .constraints import DecisionVector, ProblemParams, build_constraint_system
from .estimator import worst_case_profile


@dataclass(frozen=True)
class SampledSignal:
    """Exact samples of an admissible signal plus bounded-noise measurements."""

    params: ProblemParams
    k: int
    f_samples: np.ndarray
    f1_samples: np.ndarray
    measurements: np.ndarray

    def decision_vector(self) -> DecisionVector:
        return DecisionVector(self.f_samples, self.f1_samples)


class UnitWorstCaseSignal:
    """Extremal signal on [0, k] at unit noise amplitude and sampling period.

    The construction is piecewise parabolic: on the terminal span
    [k - k_lo, k] an upward parabola with curvature 4/epsilon^2 rises from
    -1 to +1 and exits with slope abar = 2 k_lo/epsilon^2 + 2/k_lo; each
    earlier unit interval carries a parabola pinned to the value -1 at both
    endpoint knots, with the entry/exit slopes mirrored so the whole signal
    is continuously differentiable.  Its samples at the integers stay in
    [-1, 1], so the all-zero measurement sequence is a valid noisy reading
    of it, and its curvature never exceeds 4/epsilon^2.
    """

    def __init__(self, epsilon: float, k: int, horizon: int):
        if epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if k < 1 or horizon < 1:
            raise ValueError("k and horizon must be >= 1")
        self.epsilon = float(epsilon)
        self.k = int(k)
        self.horizon = int(horizon)
        self.k_lo = min(self.k, self.horizon)
        self.start = self.k - self.k_lo  # first knot of the terminal parabola
        e2 = self.epsilon * self.epsilon
        self.abar = 2.0 * self.k_lo / e2 + 2.0 / self.k_lo
        # Right-sided slope at the terminal knot, reflected backwards with
        # alternating sign through the earlier intervals.
        self.start_slope = 2.0 / self.k_lo - 2.0 * self.k_lo / e2

    def _knot_slope(self, ell: int) -> float:
        """Right-sided slope at integer knot ell, for 1 <= ell <= start."""
        sign = -1.0 if (self.start - ell) % 2 else 1.0
        return sign * self.start_slope

    def value(self, t: float) -> float:
        if t < 0.0 or t > self.k:
            raise ValueError(f"t must lie in [0, {self.k}]")
        if t >= self.start:
            u = t - self.k
            return 2.0 * u * u / self.epsilon**2 + self.abar * u + 1.0
        ell = int(np.floor(t)) + 1
        d = self._knot_slope(ell)
        u = t - ell
        return d * u * u + d * u - 1.0

    def derivative(self, t: float) -> float:
        if t < 0.0 or t > self.k:
            raise ValueError(f"t must lie in [0, {self.k}]")
        if t >= self.start:
            return 4.0 * (t - self.k) / self.epsilon**2 + self.abar
        ell = int(np.floor(t)) + 1
        d = self._knot_slope(ell)
        return 2.0 * d * (t - ell) + d

    def samples(self) -> tuple[np.ndarray, np.ndarray]:
        """Exact values and slopes at the integer sampling instants."""
        f = np.empty(self.k + 1)
        f1 = np.empty(self.k + 1)
        e2 = self.epsilon * self.epsilon
        for j in range(self.start):
            f[j] = -1.0
            sign = -1.0 if (self.start - j) % 2 else 1.0
            f1[j] = sign * self.start_slope
        for j in range(self.start, self.k + 1):
            u = float(j - self.k)
            f[j] = 2.0 * u * u / e2 + self.abar * u + 1.0
            f1[j] = 4.0 * u / e2 + self.abar
        return f, f1


def worst_case_signal(params: ProblemParams, k: int) -> SampledSignal:
    """Admissible signal whose noisy readings can all be zero while its
    terminal derivative attains the guaranteed half-width bound.

    The unit-scale construction is stretched by the noise amplitude in
    value and by the sampling period in time, which scales sample values
    by N and slopes by N/T.  The returned measurements are identically
    zero; the implied noise is admissible because every sample lies in
    [-N, N].
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    profile = worst_case_profile(params)
    unit = UnitWorstCaseSignal(profile.epsilon, k, profile.K)
    f_unit, f1_unit = unit.samples()
    N, T = params.N, params.T
    return SampledSignal(
        params=params,
        k=int(k),
        f_samples=N * f_unit,
        f1_samples=(N / T) * f1_unit,
        measurements=np.zeros(k + 1),
    )


def random_admissible_signal(params: ProblemParams, k: int, seed: int) -> SampledSignal:
    """Seeded random signal satisfying the model bounds exactly.

    The second derivative is piecewise constant, drawn uniformly from
    [-L, L] on each sampling interval and integrated in closed form, so
    the sample/derivative pairs satisfy the window constraints without
    discretization error; noise is uniform in [-N, N].
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.default_rng(seed)
    L, N, T = params.L, params.N, params.T
    accel = rng.uniform(-L, L, size=k) if L > 0 else np.zeros(k)
    noise = rng.uniform(-N, N, size=k + 1) if N > 0 else np.zeros(k + 1)
    f = np.empty(k + 1)
    f1 = np.empty(k + 1)
    f[0] = (1.0 + N) * rng.uniform(-1.0, 1.0)
    f1[0] = (1.0 + L * T) * rng.uniform(-1.0, 1.0)
    for j in range(1, k + 1):
        a = accel[j - 1]
        f[j] = f[j - 1] + f1[j - 1] * T + 0.5 * a * T * T
        f1[j] = f1[j - 1] + a * T
    return SampledSignal(
        params=params,
        k=int(k),
        f_samples=f,
        f1_samples=f1,
        measurements=f + noise,
    )


def brute_force_bounds(params: ProblemParams, m) -> tuple[float, float] | None:
    """Exact derivative bounds for windows of one or two steps.

    Enumerates every square subsystem of the one-sided constraint rows,
    solves it, keeps the feasible vertices, and returns the extreme values
    of the newest derivative coordinate.  Returns None when no feasible
    vertex exists (empty polytope).  Exponential in the window length, so
    restricted to k <= 2.
    """
    mv = np.asarray(m, dtype=float)
    k = mv.size - 1
    if k not in (1, 2):
        raise ValueError("vertex enumeration oracle is restricted to k in {1, 2}")
    cs = build_constraint_system(params, k)
    A_one, b_one = lp.expand_two_sided(cs, mv)
    n = cs.num_vars

    subsets = np.array(list(itertools.combinations(range(A_one.shape[0]), n)))
    mats = A_one[subsets]
    rhs = b_one[subsets]
    row_norms = np.linalg.norm(A_one, axis=1)
    scale = np.prod(row_norms[subsets], axis=1)
    dets = np.abs(np.linalg.det(mats))
    solvable = dets > 1e-10 * np.maximum(scale, 1e-300)
    if not solvable.any():
        return None
    vertices = np.linalg.solve(mats[solvable], rhs[solvable][..., None])[..., 0]

    tol = 1e-9 * max(1.0, float(np.max(np.abs(b_one))))
    feasible = np.all(A_one @ vertices.T <= b_one[:, None] + tol, axis=0)
    if not feasible.any():
        return None
    values = vertices[feasible][:, cs.objective_index]
    return float(values.min()), float(values.max())


def counterexample_measurements() -> tuple[ProblemParams, np.ndarray]:
    """Measurement window with a nonempty polytope that no signal generates.

    With L=2, T=1, N=0 the readings [0, 0, 4] admit feasible
    sample/derivative vectors (all of the form f = [0, 0, 4],
    f1 = [f1_0, 1, 3] with f1_0 in [-1, 3]), yet no twice-differentiable
    function with |f''| <= 2 produces them: the window constraints only
    look backwards in time, and the time-reversed Taylor bound they omit
    rules every candidate out.
    """
    return ProblemParams(L=2.0, N=0.0, T=1.0), np.array([0.0, 0.0, 4.0])
