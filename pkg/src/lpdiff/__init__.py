"""Guaranteed derivative bounds for sampled signals via linear programming."""

from .baselines import (
    HIGH_GAIN_ACCURACY_FACTOR,
    HighGainState,
    SlidingModeState,
    benchmark_noise,
    high_gain_asymptotic_accuracy,
    high_gain_default_tau,
    high_gain_step,
    sliding_mode_defaults,
    sliding_mode_step,
)
from .constraints import (
    ConstraintSystem,
    DecisionVector,
    ProblemParams,
    build_constraint_system,
    is_member,
    residuals,
)
from .estimator import (
    DerivativeEstimate,
    EstimatorState,
    NotReadyError,
    WorstCaseProfile,
    accuracy_lower_limit,
    worst_case_profile,
)
from .lp import LpResult, expand_two_sided, solve
from .oracles import (
    SampledSignal,
    UnitWorstCaseSignal,
    brute_force_bounds,
    counterexample_measurements,
    random_admissible_signal,
    worst_case_signal,
)

__version__ = "0.1.0"

__all__ = [
    "HIGH_GAIN_ACCURACY_FACTOR",
    "ConstraintSystem",
    "DecisionVector",
    "DerivativeEstimate",
    "EstimatorState",
    "HighGainState",
    "LpResult",
    "NotReadyError",
    "ProblemParams",
    "SampledSignal",
    "SlidingModeState",
    "UnitWorstCaseSignal",
    "WorstCaseProfile",
    "accuracy_lower_limit",
    "benchmark_noise",
    "brute_force_bounds",
    "build_constraint_system",
    "counterexample_measurements",
    "expand_two_sided",
    "high_gain_asymptotic_accuracy",
    "high_gain_default_tau",
    "high_gain_step",
    "is_member",
    "random_admissible_signal",
    "residuals",
    "sliding_mode_defaults",
    "sliding_mode_step",
    "solve",
    "worst_case_profile",
    "worst_case_signal",
]
