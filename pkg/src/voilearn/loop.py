"""The reward-learning loop: query, pick a teacher, ask, update, repeat.

Each iteration samples a query pair, selects which teacher to ask (by
expected-metric minimization or one of the baseline heuristics), asks the
simulated teacher, and folds the answer into the belief. The loop stops when
the belief entropy drops below the configured threshold or the step budget
runs out. Harness runs use ``entropy_threshold = 0.0`` to force a fixed step
count.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field

import numpy as np

from .belief import Belief, MetricKind, entropy, log_loss, mse, update
from .queries import QuerySource, generate_query
from .selection import select_teacher
from .teachers import SimulatedTeacherWorld, TeacherPool

__all__ = [
    "LoopConfig",
    "SelectionStrategy",
    "StepRecord",
    "TrialRecord",
    "learn_reward_model",
    "save_trial_records_csv",
]

_UNIT_BETA_ATOL = 1e-9


class SelectionStrategy(enum.Enum):
    """How the loop chooses which teacher to query at each step."""

    EXPECTED_METRIC = "expected_metric"
    LARGEST_BETA = "largest_beta"
    RANDOM_BETA = "random_beta"
    FIXED_BETA_ONE = "fixed_beta_one"


@dataclass(frozen=True)
class LoopConfig:
    """Loop parameters. ``entropy_threshold = 0`` disables the entropy
    stopping rule entirely (fixed step budget, the harness mode)."""

    metric: MetricKind = MetricKind.MSE
    entropy_threshold: float = 0.0
    max_steps: int = 100
    strategy: SelectionStrategy = SelectionStrategy.EXPECTED_METRIC
    # when the pool has no beta == 1 entry, FIXED_BETA_ONE falls back to the
    # nearest entry unless this is disabled
    nearest_unit_beta_fallback: bool = True

    def __post_init__(self):
        if self.entropy_threshold < 0:
            raise ValueError(f"entropy threshold must be >= 0, got {self.entropy_threshold}")
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")


@dataclass(frozen=True)
class StepRecord:
    step: int
    chosen_beta: float
    preference: int
    mse: float
    log_loss: float
    entropy: float
    query_digest: str


@dataclass
class TrialRecord:
    """Full trace of one simulated learning run."""

    w_true: np.ndarray
    seed: int | None
    steps: list[StepRecord] = field(default_factory=list)
    final_belief: Belief | None = None


def _query_digest(phi_i: np.ndarray, phi_j: np.ndarray) -> str:
    h = hashlib.blake2b(digest_size=8)
    h.update(np.ascontiguousarray(phi_i, dtype=float).tobytes())
    h.update(np.ascontiguousarray(phi_j, dtype=float).tobytes())
    return h.hexdigest()


def _choose_beta(
    strategy: SelectionStrategy,
    belief: Belief,
    phi_diff: np.ndarray,
    pool: TeacherPool,
    config: LoopConfig,
    rng: np.random.Generator | None,
) -> float:
    if strategy is SelectionStrategy.EXPECTED_METRIC:
        return select_teacher(belief, phi_diff, pool, config.metric).chosen_beta
    if strategy is SelectionStrategy.LARGEST_BETA:
        return pool.max_beta
    if strategy is SelectionStrategy.RANDOM_BETA:
        if rng is None:
            raise ValueError("RANDOM_BETA strategy needs an rng")
        return pool.betas[int(rng.integers(len(pool)))]
    idx = pool.index_nearest(1.0)
    if abs(pool.betas[idx] - 1.0) > _UNIT_BETA_ATOL and not config.nearest_unit_beta_fallback:
        raise ValueError(
            f"pool has no beta within {_UNIT_BETA_ATOL} of 1.0 "
            "(closest is {:g}) and nearest fallback is disabled".format(pool.betas[idx])
        )
    return pool.betas[idx]


def learn_reward_model(
    prior: Belief,
    pool: TeacherPool,
    config: LoopConfig,
    query_source: QuerySource,
    world: SimulatedTeacherWorld,
    rng: np.random.Generator | None = None,
    seed: int | None = None,
) -> TrialRecord:
    """Run the learning loop until entropy convergence or the step budget.

    ``rng`` drives only the strategy's own randomness (RANDOM_BETA picks);
    queries and teacher noise come from ``query_source`` and ``world`` so that
    parallel runs can share them. Deterministic given seeds: replaying with
    identical streams yields a bit-identical record.
    """
    belief = prior
    record = TrialRecord(w_true=world.w_true.copy(), seed=seed)
    for step in range(1, config.max_steps + 1):
        if config.entropy_threshold > 0 and entropy(belief) <= config.entropy_threshold:
            break
        phi_i, phi_j = generate_query(query_source)
        phi_diff = phi_i - phi_j
        beta = _choose_beta(config.strategy, belief, phi_diff, pool, config, rng)
        preference = world.answer(phi_diff, beta)
        belief = update(belief, preference, phi_diff, beta)
        record.steps.append(
            StepRecord(
                step=step,
                chosen_beta=beta,
                preference=preference,
                mse=mse(belief, world.w_true),
                log_loss=log_loss(belief, world.w_true),
                entropy=entropy(belief),
                query_digest=_query_digest(phi_i, phi_j),
            )
        )
    record.final_belief = belief
    return record


def save_trial_records_csv(records, path, strategy_labels=None, header_lines=()) -> None:
    """Write per-step traces: ``trial, step, strategy, chosen_beta, preference, ...``."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# voilearn trial records\n")
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write("trial,step,strategy,chosen_beta,preference,mse,log_loss,entropy\n")
        for trial_idx, record in enumerate(records):
            label = strategy_labels[trial_idx] if strategy_labels else ""
            for s in record.steps:
                fh.write(
                    f"{trial_idx},{s.step},{label},{s.chosen_beta!r},{s.preference},"
                    f"{s.mse!r},{s.log_loss!r},{s.entropy!r}\n"
                )
