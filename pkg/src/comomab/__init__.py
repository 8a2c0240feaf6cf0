"""Combinatorial multi-objective multi-armed bandits."""

from .core import Action, ActionSet, action_mean, dominates, incomparable, super_dominates, weakly_dominates
from .pareto import (
    GapStats,
    compute_pareto_front,
    compute_spf,
    cumulative_regret,
    gap_stats,
    hoeffding_violation_bound,
    psg,
    psg_oracle,
    theorem1_bound,
)
from .policies import LLR, SOUCB1, ComoUCB, ParetoUCB1, make_policy
from .simkit import ExperimentSpec, RunTrace, fairness_profile, run_experiment, run_single

__version__ = "0.1.0"
