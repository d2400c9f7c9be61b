"""Bayesian reward learning from preference comparisons, with active
selection of which teacher to query by expected posterior error."""

__version__ = "0.1.0"

from .belief import (
    Belief,
    DegenerateBeliefError,
    MetricKind,
    OutOfSupportError,
    entropy,
    from_masses,
    gaussian_prior,
    load_belief_csv,
    log_loss,
    mse,
    save_belief_csv,
    uniform_prior,
    update,
)
from .estimator import PreferenceRewardEstimator
from .grid import WeightGrid
from .loop import LoopConfig, SelectionStrategy, StepRecord, TrialRecord, learn_reward_model
from .queries import QueryMode, QuerySource, generate_query
from .selection import (
    ExpectedMetricReport,
    expected_log_loss,
    expected_metric,
    expected_mse,
    outcome_masses,
    select_teacher,
)
from .teachers import (
    PREFERS_I,
    PREFERS_J,
    SimulatedTeacherWorld,
    TeacherPool,
    preference_prob,
    reward,
    sample_preference,
)

__all__ = [
    "Belief",
    "DegenerateBeliefError",
    "ExpectedMetricReport",
    "LoopConfig",
    "MetricKind",
    "OutOfSupportError",
    "PREFERS_I",
    "PREFERS_J",
    "PreferenceRewardEstimator",
    "QueryMode",
    "QuerySource",
    "SelectionStrategy",
    "SimulatedTeacherWorld",
    "StepRecord",
    "TeacherPool",
    "TrialRecord",
    "WeightGrid",
    "entropy",
    "expected_log_loss",
    "expected_metric",
    "expected_mse",
    "from_masses",
    "gaussian_prior",
    "generate_query",
    "learn_reward_model",
    "load_belief_csv",
    "log_loss",
    "mse",
    "outcome_masses",
    "preference_prob",
    "reward",
    "sample_preference",
    "save_belief_csv",
    "select_teacher",
    "uniform_prior",
    "update",
]
