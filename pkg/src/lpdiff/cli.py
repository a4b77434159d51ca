"""Command-line front end: derivative estimation from CSV streams,
worst-case tables, and the baseline comparison experiment.

Exit codes: 0 success, 1 usage/input error, 2 model inconsistency detected.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

from . import baselines
from .constraints import ProblemParams
from .estimator import EstimatorState, accuracy_lower_limit, worst_case_profile

SPACING_RTOL = 1e-9


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _params_from_args(args) -> ProblemParams:
    return ProblemParams(L=args.L, N=args.N, T=args.T)


def _read_samples(path: str) -> tuple[list[float], list[float]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["t", "m"]:
            raise ValueError(f"{path}: expected CSV header 't,m'")
        t: list[float] = []
        m: list[float] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{lineno}: expected two columns")
            try:
                t.append(float(row[0]))
                m.append(float(row[1]))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return t, m


def _check_spacing(t: list[float], T: float) -> None:
    if len(t) < 2:
        raise ValueError("need at least two samples")
    for j in range(1, len(t)):
        if abs((t[j] - t[j - 1]) - T) > SPACING_RTOL * T:
            raise ValueError(
                f"nonuniform sampling: t[{j}] - t[{j - 1}] = {t[j] - t[j - 1]!r}"
                f" differs from T = {T!r}"
            )


def cmd_estimate(args) -> int:
    params = _params_from_args(args)
    t, m = _read_samples(args.input)
    _check_spacing(t, params.T)
    state = EstimatorState(params, khat=args.khat)
    any_inconsistent = False
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("k,t,m,f1_lower,f1_upper,f1_hat,width,status\n")
        for k, (tk, mk) in enumerate(zip(t, m)):
            state.push_measurement(mk)
            if k == 0:
                continue
            est = state.estimate()
            if est.status == "inconsistent":
                any_inconsistent = True
            fh.write(
                f"{k},{_fmt(tk)},{_fmt(mk)},{_fmt(est.lower)},{_fmt(est.upper)},"
                f"{_fmt(est.estimate)},{_fmt(est.width)},{est.status}\n"
            )
    return 2 if any_inconsistent else 0


def cmd_worstcase(args) -> int:
    params = _params_from_args(args)
    profile = worst_case_profile(params)
    print(f"epsilon = {_fmt(profile.epsilon)}")
    print(f"Q = {profile.Q}")
    print(f"K = {profile.K}")
    for ell in range(1, profile.K + 1):
        print(f"hbar({ell}) = {_fmt(profile.hbar(ell))}")
    print(f"accuracy_lower_limit = {_fmt(accuracy_lower_limit(params))}")
    return 0


def cmd_simulate(args) -> int:
    params = _params_from_args(args)
    if args.duration <= 0.0:
        raise ValueError("duration must be positive")
    L, N, T = params.L, params.N, params.T

    if N > 0.0:
        horizon = worst_case_profile(params).K

        def noise(tk: float) -> float:
            return baselines.benchmark_noise(tk, params)

    else:
        horizon = 1

        def noise(tk: float) -> float:
            return 0.0

    khat = args.khat if args.khat is not None else horizon
    steps = int(math.floor(args.duration / T + 1e-9)) + 1

    state = EstimatorState(params, khat=khat)
    hg = baselines.HighGainState(
        y1=0.0, y2=0.0, tau=baselines.high_gain_default_tau(params) if N > 0 else T
    )
    k1, k2 = baselines.sliding_mode_defaults(params)
    sm = baselines.SlidingModeState(y1=0.0, y2=0.0, k1=k1, k2=k2)

    sup_lp = sup_hg = sup_sm = sup_bound = 0.0
    transient = horizon * T
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,eta,err_lp,bound_lp,err_hg,err_sm\n")
        for k in range(steps):
            tk = k * T
            eta = noise(tk)
            mk = 0.5 * L * tk * tk + eta
            state.push_measurement(mk)
            if k == 0:
                continue
            est = state.estimate()
            hg = baselines.high_gain_step(hg, mk, T)
            sm = baselines.sliding_mode_step(sm, mk, T, scheme=args.scheme)
            truth = L * tk
            err_lp = est.estimate - truth
            bound_lp = 0.5 * est.width
            err_hg = hg.y2 - truth
            err_sm = sm.y2 - truth
            fh.write(
                f"{_fmt(tk)},{_fmt(eta)},{_fmt(err_lp)},{_fmt(bound_lp)},"
                f"{_fmt(err_hg)},{_fmt(err_sm)}\n"
            )
            if tk >= transient:
                sup_lp = max(sup_lp, abs(err_lp))
                sup_hg = max(sup_hg, abs(err_hg))
                sup_sm = max(sup_sm, abs(err_sm))
                sup_bound = max(sup_bound, bound_lp)

    print(f"post-transient window: t >= {_fmt(transient)}")
    print(f"sup |err_lp| = {_fmt(sup_lp)} (reported bound <= {_fmt(sup_bound)})")
    print(f"sup |err_hg| = {_fmt(sup_hg)}")
    print(f"sup |err_sm| = {_fmt(sup_sm)} (scheme: {args.scheme})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpdiff",
        description="Derivative bounds for sampled signals with bounded noise "
        "and bounded second derivative.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p):
        p.add_argument("--L", type=float, required=True, help="second-derivative bound")
        p.add_argument("--N", type=float, required=True, help="noise amplitude bound")
        p.add_argument("--T", type=float, required=True, help="sampling period")

    p_est = sub.add_parser("estimate", help="estimate derivatives from a CSV stream")
    add_params(p_est)
    p_est.add_argument("--khat", type=int, default=None, help="window cap (default: horizon K)")
    p_est.add_argument("--input", required=True, help="input CSV with header t,m")
    p_est.add_argument("--out", required=True, help="output CSV path")
    p_est.set_defaults(func=cmd_estimate)

    p_wc = sub.add_parser("worstcase", help="print the worst-case accuracy table")
    add_params(p_wc)
    p_wc.set_defaults(func=cmd_worstcase)

    p_sim = sub.add_parser("simulate", help="run the baseline comparison experiment")
    add_params(p_sim)
    p_sim.add_argument("--khat", type=int, default=None, help="window cap (default: horizon K)")
    p_sim.add_argument("--duration", type=float, default=1.1, help="simulated time span (s)")
    p_sim.add_argument("--seed", type=int, default=0,
                       help="reserved for stochastic noise variants; the default "
                       "scenario is deterministic")
    p_sim.add_argument("--scheme", choices=baselines.SCHEMES, default="semi_implicit",
                       help="sliding-mode stepping scheme")
    p_sim.add_argument("--out", required=True, help="output CSV path")
    p_sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"lpdiff: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
