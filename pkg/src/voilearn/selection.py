"""Expected posterior error of a candidate teacher, and teacher selection.

Querying a teacher of rationality ``beta`` on a fixed query produces one of
two posteriors, one per answer. Averaging a belief-error metric over both the
current belief (as the hypothetical truth) and the teacher's stochastic
answer scores the teacher *before* asking: the value of asking. Selection
picks the pool entry with the lowest expected score.

Both metrics reduce to closed forms in the per-cell quantities

    g(w) = prior_mass(w) * likelihood(answer | w)

Expected MSE:      sum_answers (2 / Z) * (Z * S - |m|^2)
Expected log loss: -sum_answers sum_w g(w) * log(g(w) / Z)

with ``Z = sum g``, ``S = sum g |w|^2``, ``m = sum g w``. Answers whose total
mass ``Z`` underflows to zero are skipped (they occur with probability zero).
Both forms are validated against a brute-force enumeration of the defining
double expectation in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .belief import Belief, MetricKind, entropy
from .teachers import TeacherPool, check_beta, check_preference

__all__ = [
    "ExpectedMetricReport",
    "expected_log_loss",
    "expected_metric",
    "expected_mse",
    "outcome_masses",
    "pool_expected_metrics",
    "select_teacher",
]


def _phi_as_vector(belief: Belief, phi_diff) -> np.ndarray:
    phi = np.asarray(phi_diff, dtype=float).reshape(-1)
    if phi.shape[0] != belief.grid.dims:
        raise ValueError(
            f"phi_diff has {phi.shape[0]} components, grid has {belief.grid.dims} axes"
        )
    return phi


def outcome_masses(belief: Belief, phi_diff, beta: float, preference) -> np.ndarray:
    """Per-cell ``prior_mass * likelihood`` for one hypothetical answer.

    Unnormalized: summing over cells gives the marginal probability of that
    answer, and the two answers' fields sum to the prior masses.
    """
    pref = check_preference(preference)
    beta = check_beta(beta)
    phi = _phi_as_vector(belief, phi_diff)
    dots = belief.grid.cell_centers @ phi
    return np.exp(belief.log_mass - np.logaddexp(0.0, -pref * beta * dots))


def _pool_metric_matrix(belief: Belief, phi_diff, betas: np.ndarray, metric: MetricKind) -> np.ndarray:
    """Expected metric for each beta in one vectorized pass, shape ``(len(betas),)``."""
    phi = _phi_as_vector(belief, phi_diff)
    centers = belief.grid.cell_centers
    sq = belief.grid.center_sq_norms
    dots = centers @ phi
    logits = betas[:, None] * dots[None, :]
    # -log sigmoid(x) for both answers; the complement reuses the first pass
    # via  log sigmoid(-x) = log sigmoid(x) - x
    cost_plus = np.logaddexp(0.0, -logits)
    cost_minus = logits + cost_plus
    values = np.zeros(len(betas))
    for cost in (cost_plus, cost_minus):
        log_g = belief.log_mass[None, :] - cost
        g = np.exp(log_g)
        z = g.sum(axis=1)
        live = z > 0
        if metric is MetricKind.MSE:
            s = g @ sq
            m = g @ centers
            m_sq = np.einsum("kd,kd->k", m, m)
            values[live] += (2.0 / z[live]) * (z[live] * s[live] - m_sq[live])
        else:
            # log z is safe here: log_g <= 0 so z cannot overflow, and
            # branches whose z underflows to 0 are skipped as zero-probability
            with np.errstate(divide="ignore"):
                log_z = np.log(z)
            # keep 0 * log(0) == 0: zero-mass cells contribute nothing
            terms = g * np.where(g > 0, log_g - log_z[:, None], 0.0)
            values[live] -= terms.sum(axis=1)[live]
    return values


def pool_expected_metrics(belief: Belief, phi_diff, pool: TeacherPool, metric: MetricKind) -> np.ndarray:
    """Expected metric value for every teacher in the pool."""
    return _pool_metric_matrix(belief, phi_diff, pool.betas_array, metric)


def expected_mse(belief: Belief, phi_diff, beta: float) -> float:
    """Expected posterior MSE after one query to a ``beta``-rational teacher.

    At ``beta = 0`` this equals the prior's own expected MSE,
    ``2 * (E|w|^2 - |E w|^2)``; no teacher can raise it above that.
    """
    beta = check_beta(beta)
    return float(_pool_metric_matrix(belief, phi_diff, np.array([beta]), MetricKind.MSE)[0])


def expected_log_loss(belief: Belief, phi_diff, beta: float) -> float:
    """Expected posterior log loss after one query; equals the belief entropy at ``beta = 0``."""
    beta = check_beta(beta)
    return float(_pool_metric_matrix(belief, phi_diff, np.array([beta]), MetricKind.LOG_LOSS)[0])


def expected_metric(belief: Belief, phi_diff, beta: float, metric: MetricKind) -> float:
    if metric is MetricKind.MSE:
        return expected_mse(belief, phi_diff, beta)
    return expected_log_loss(belief, phi_diff, beta)


def argmin_smallest_beta(values: np.ndarray, betas: np.ndarray) -> int:
    """Index of the minimum value; exact ties resolve to the smallest beta."""
    tied = np.flatnonzero(values == values.min())
    return int(tied[np.argmin(betas[tied])])


@dataclass(frozen=True)
class ExpectedMetricReport:
    """Per-teacher expected scores and the selected pool index."""

    metric: MetricKind
    betas: tuple[float, ...]
    expected_values: tuple[float, ...]
    chosen_index: int

    @property
    def chosen_beta(self) -> float:
        return self.betas[self.chosen_index]

    def save_csv(self, path, header_lines=()) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# voilearn expected-metric report: {self.metric.value}\n")
            for line in header_lines:
                fh.write(f"# {line}\n")
            fh.write("beta,expected_value,chosen\n")
            for i, (b, v) in enumerate(zip(self.betas, self.expected_values)):
                fh.write(f"{b!r},{v!r},{int(i == self.chosen_index)}\n")


def select_teacher(belief: Belief, phi_diff, pool: TeacherPool, metric: MetricKind) -> ExpectedMetricReport:
    """Score every teacher in the pool and pick the argmin.

    Pure function of its inputs: identical calls return identical reports.
    Ties (exact value equality) resolve to the smallest beta.
    """
    betas = pool.betas_array
    values = _pool_metric_matrix(belief, phi_diff, betas, metric)
    chosen = argmin_smallest_beta(values, betas)
    return ExpectedMetricReport(
        metric=metric,
        betas=pool.betas,
        expected_values=tuple(float(v) for v in values),
        chosen_index=chosen,
    )


def prior_metric_value(belief: Belief, metric: MetricKind) -> float:
    """The no-information baseline: expected metric of the belief itself.

    Matches the expected metric at ``beta = 0`` (a coin-flip teacher).
    """
    if metric is MetricKind.MSE:
        m = belief.masses
        centers = belief.grid.cell_centers
        mean = m @ centers
        return float(2.0 * (m @ belief.grid.center_sq_norms - mean @ mean))
    return entropy(belief)
