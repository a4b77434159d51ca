"""Bounding linear programs over a window polytope.

Maximizes or minimizes the newest derivative variable over the constraint
set, using a dense two-phase primal simplex.  Free variables are split
into differences of nonnegative ones; Bland's rule kicks in after a
degenerate stall to guarantee termination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constraints import ConstraintSystem, DecisionVector

FEASIBILITY_TOL = 1e-9
REDUCED_COST_TOL = 1e-9
PIVOT_TOL = 1e-11
PHASE1_TOL = 1e-7
STALL_LIMIT = 50


@dataclass(frozen=True)
class LpResult:
    """Outcome of one bounding solve.

    value and point are defined only for status "optimal"; value is the
    objective coordinate of point.
    """

    status: str  # "optimal" | "infeasible" | "unbounded"
    value: float | None = None
    point: DecisionVector | None = None


def expand_two_sided(cs: ConstraintSystem, m) -> tuple[np.ndarray, np.ndarray]:
    """One-sided form of the window polytope.

    |A x + M m| <= b is equivalent to A x <= b - M m together with
    -A x <= b + M m; the returned pair (A_one, b_one) stacks both halves.
    """
    mv = np.asarray(m, dtype=float)
    if mv.shape != (cs.k + 1,):
        raise ValueError(f"measurement vector must have length {cs.k + 1}")
    shift = cs.M @ mv
    A_one = np.vstack([cs.A, -cs.A])
    b_one = np.concatenate([cs.b - shift, cs.b + shift])
    return A_one, b_one


def solve(direction: str, cs: ConstraintSystem, m) -> LpResult:
    """Maximize or minimize the newest derivative variable over the polytope.

    Args:
        direction: "max" or "min".
        cs: constraint system from build_constraint_system.
        m: measurement vector of length k+1.

    Returns:
        LpResult with status "optimal" and the bound value, or status
        "infeasible" when the measurements are inconsistent with the
        (L, N, T) signal model.  "unbounded" only signals an internal
        failure: the objective coordinate is bounded for finite N and L.
    """
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    A_one, b_one = expand_two_sided(cs, m)
    c = np.zeros(cs.num_vars)
    c[cs.objective_index] = 1.0 if direction == "max" else -1.0
    status, x = _simplex_max(A_one, b_one, c)
    if status != "optimal":
        return LpResult(status=status)
    value = float(x[cs.objective_index])
    return LpResult(status="optimal", value=value, point=DecisionVector.from_array(x))


def _simplex_max(A_ub: np.ndarray, b_ub: np.ndarray, c: np.ndarray):
    """Two-phase primal simplex for max c.x s.t. A_ub x <= b_ub, x free.

    Returns (status, x) with x defined only for status "optimal".
    """
    m, n = A_ub.shape
    nv = 2 * n  # free variables split as x = x+ - x-

    G = np.hstack([A_ub, -A_ub])
    b = b_ub.astype(float).copy()
    flip = b < 0.0
    G = G.copy()
    G[flip] *= -1.0
    b[flip] = -b[flip]
    art_rows = np.flatnonzero(flip)
    n_art = art_rows.size
    n_slack = m
    ncols = nv + n_slack + n_art

    T = np.zeros((m, ncols + 1))
    T[:, :nv] = G
    rows = np.arange(m)
    T[rows, nv + rows] = np.where(flip, -1.0, 1.0)  # surplus on flipped rows
    T[art_rows, nv + n_slack + np.arange(n_art)] = 1.0
    T[:, -1] = b

    basis = nv + rows.copy()
    basis[art_rows] = nv + n_slack + np.arange(n_art)
    allowed = np.ones(ncols, dtype=bool)

    if n_art:
        d_aux = np.zeros(ncols)
        d_aux[nv + n_slack :] = -1.0  # maximize -(sum of artificials)
        status = _iterate(T, basis, d_aux, allowed, art_floor=nv + n_slack)
        if status != "optimal":
            raise RuntimeError(f"phase-1 simplex returned {status}")
        infeas = sum(T[i, -1] for i in range(m) if basis[i] >= nv + n_slack)
        if infeas > PHASE1_TOL:
            return "infeasible", None
        _drive_out_artificials(T, basis, nv + n_slack)
        keep = [i for i in range(m) if basis[i] < nv + n_slack]
        if len(keep) < m:  # redundant rows left from phase 1
            T = T[keep]
            basis = basis[keep]
            m = len(keep)
        T = np.hstack([T[:, : nv + n_slack], T[:, -1:]])
        ncols = nv + n_slack
        allowed = np.ones(ncols, dtype=bool)

    d = np.zeros(ncols)
    d[:n] = c
    d[n:nv] = -c
    status = _iterate(T, basis, d, allowed, art_floor=ncols)
    if status != "optimal":
        return status, None

    z = np.zeros(ncols)
    z[basis] = T[:, -1]
    x = z[:n] - z[n:nv]
    return "optimal", x


def _iterate(T, basis, d, allowed, art_floor):
    """Run simplex pivots in place until optimal or unbounded."""
    m, width = T.shape
    obj = np.zeros(width)
    obj[:-1] = d
    for i in range(m):
        if obj[basis[i]] != 0.0:
            obj -= obj[basis[i]] * T[i]

    bland = False
    stall = 0
    best = -obj[-1]
    max_iter = 1000 + 200 * (m + width)
    for _ in range(max_iter):
        reduced = np.where(allowed, obj[:-1], -np.inf)
        if bland:
            eligible = np.flatnonzero(reduced > REDUCED_COST_TOL)
            if eligible.size == 0:
                return "optimal"
            col = int(eligible[0])
        else:
            col = int(np.argmax(reduced))
            if reduced[col] <= REDUCED_COST_TOL:
                return "optimal"

        column = T[:, col]
        positive = column > PIVOT_TOL
        if not positive.any():
            return "unbounded"
        ratios = np.full(m, np.inf)
        ratios[positive] = np.maximum(T[positive, -1], 0.0) / column[positive]
        best_ratio = ratios.min()
        ties = np.flatnonzero(ratios <= best_ratio + 1e-15 + 1e-9 * best_ratio)
        if bland:
            row = int(ties[np.argmin(basis[ties])])
        else:
            row = int(ties[np.argmax(column[ties])])

        _pivot(T, obj, row, col)
        if basis[row] >= art_floor:
            allowed[basis[row]] = False  # artificial never re-enters
        basis[row] = col

        value = -obj[-1]
        if value > best + 1e-12 * (1.0 + abs(best)):
            best = value
            stall = 0
        else:
            stall += 1
            if stall >= STALL_LIMIT:
                bland = True
    raise RuntimeError("simplex iteration limit exceeded")


def _pivot(T, obj, row, col):
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])
    obj -= obj[col] * T[row]


def _drive_out_artificials(T, basis, art_floor):
    """Pivot zero-level artificial variables out of the basis where possible."""
    m = T.shape[0]
    for i in range(m):
        if basis[i] < art_floor:
            continue
        candidates = np.abs(T[i, :art_floor])
        j = int(np.argmax(candidates))
        if candidates[j] > PIVOT_TOL:
            obj = np.zeros(T.shape[1])  # no objective bookkeeping needed here
            _pivot(T, obj, i, j)
            basis[i] = j
        # else: redundant row, caller drops it
