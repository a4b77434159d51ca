"""Linear constraint systems for sliding-window derivative estimation.

A window of k+1 noisy samples of a signal with second derivative bounded
by L and measurement noise bounded by N defines a polytope of hypothetical
sample/derivative vectors consistent with the data.  This module assembles
that polytope in the two-sided form |A x + M m| <= b and evaluates
membership of candidate vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True)
class ProblemParams:
    """Signal-class constants.

    Attributes:
        L: bound on the absolute second derivative of the signal
           (signal-units / s^2).
        N: noise amplitude bound (signal-units).
        T: sampling period (s).
    """

    L: float
    N: float
    T: float

    def __post_init__(self):
        for name in ("L", "N", "T"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.L < 0.0 or self.N < 0.0:
            raise ValueError("L and N must be nonnegative")
        if self.T <= 0.0:
            raise ValueError("T must be positive")

    def require_positive(self) -> None:
        """Guard for formulas defined only for strictly positive L and N."""
        if self.L <= 0.0 or self.N <= 0.0:
            raise ValueError("this operation requires L > 0 and N > 0")


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class DecisionVector:
    """Hypothetical sample values f_0..f_k and derivative values f1_0..f1_k."""

    f: np.ndarray
    f1: np.ndarray

    def __post_init__(self):
        f = np.array(self.f, dtype=float)
        f1 = np.array(self.f1, dtype=float)
        if f.ndim != 1 or f1.ndim != 1 or f.shape != f1.shape:
            raise ValueError("f and f1 must be 1-d sequences of identical length")
        if f.size < 2:
            raise ValueError("need at least two samples (k >= 1)")
        object.__setattr__(self, "f", _readonly(f))
        object.__setattr__(self, "f1", _readonly(f1))

    @property
    def k(self) -> int:
        return self.f.size - 1

    def as_array(self) -> np.ndarray:
        """Stacked vector [f_0..f_k, f1_0..f1_k]."""
        return np.concatenate([self.f, self.f1])

    @classmethod
    def from_array(cls, x: np.ndarray) -> "DecisionVector":
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or x.size < 4 or x.size % 2 != 0:
            raise ValueError("stacked vector must have even length 2(k+1) >= 4")
        n = x.size // 2
        return cls(x[:n], x[n:])

    @classmethod
    def sample_function(cls, fun, dfun, k: int, T: float) -> "DecisionVector":
        """Sample a function and its derivative at t = 0, T, ..., kT."""
        t = np.arange(k + 1) * T
        return cls(np.array([fun(ti) for ti in t]), np.array([dfun(ti) for ti in t]))


@dataclass(frozen=True)
class ConstraintSystem:
    """Window polytope {x : |A x + M m| <= b} for measurement vectors m.

    Rows come in three blocks: k rows bounding consecutive derivative
    differences by L*T, k rows bounding the local Taylor residual by
    L*T^2/2, and k+1 rows bounding the sample/measurement mismatch by N.
    """

    k: int
    A: np.ndarray
    M: np.ndarray
    b: np.ndarray
    objective_index: int

    def __post_init__(self):
        _readonly(self.A)
        _readonly(self.M)
        _readonly(self.b)

    @property
    def num_rows(self) -> int:
        return 3 * self.k + 1

    @property
    def num_vars(self) -> int:
        return 2 * self.k + 2


def _difference_matrix(k: int) -> np.ndarray:
    """Toeplitz first-difference matrix, first row [-1, 1, 0, ...]."""
    D = np.zeros((k, k + 1))
    idx = np.arange(k)
    D[idx, idx] = -1.0
    D[idx, idx + 1] = 1.0
    return D


def build_constraint_system(params: ProblemParams, k: int) -> ConstraintSystem:
    """Assemble the window constraint system for k+1 samples.

    Args:
        params: signal-class constants (L, N, T).
        k: window length; the system covers samples 0..k.

    Returns:
        ConstraintSystem whose membership test |A x + M m| <= b holds
        exactly when x satisfies the derivative-difference bound and the
        Taylor-residual bound for j = 1..k and |f_j - m_j| <= N for
        j = 0..k.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"window length k must be an integer >= 1, got {k!r}")
    k = int(k)
    n = k + 1
    L, N, T = params.L, params.N, params.T

    D = _difference_matrix(k)
    A = np.zeros((3 * k + 1, 2 * n))
    A[:k, n:] = D
    A[k : 2 * k, :n] = D
    A[k : 2 * k, n + 1 :] -= T * np.eye(k)
    A[2 * k :, :n] = np.eye(n)
    # Measurements enter with -I so the third block reads f_j - m_j.
    M = np.zeros((3 * k + 1, n))
    M[2 * k :, :] = -np.eye(n)
    b = np.concatenate(
        [np.full(k, L * T), np.full(k, L * T * T / 2.0), np.full(n, N)]
    )
    return ConstraintSystem(k=k, A=A, M=M, b=b, objective_index=2 * k + 1)


def _as_stacked(x) -> np.ndarray:
    if isinstance(x, DecisionVector):
        return x.as_array()
    return np.asarray(x, dtype=float)


def residuals(cs: ConstraintSystem, x, m) -> np.ndarray:
    """Componentwise |A x + M m| - b; all entries <= 0 means x is feasible."""
    xv = _as_stacked(x)
    mv = np.asarray(m, dtype=float)
    if xv.shape != (cs.num_vars,):
        raise ValueError(f"decision vector must have length {cs.num_vars}")
    if mv.shape != (cs.k + 1,):
        raise ValueError(f"measurement vector must have length {cs.k + 1}")
    return np.abs(cs.A @ xv + cs.M @ mv) - cs.b


def is_member(cs: ConstraintSystem, x, m, tol: float = DEFAULT_MEMBERSHIP_TOL) -> bool:
    """True iff the largest constraint residual does not exceed tol."""
    if tol < 0.0:
        raise ValueError("tol must be nonnegative")
    return bool(np.max(residuals(cs, x, m)) <= tol)
