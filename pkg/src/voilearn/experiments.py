"""Simulation harness: phase map, strategy comparison, selection trace,
and the posterior-concentration check.

Every run is driven by one 64-bit master seed through a splittable PCG64
stream tree: trial ``t`` owns independent child streams for the true weights,
the query sequence, the teacher noise, and the random-baseline picks. When
strategies are compared, each strategy replays the *same* query and noise
streams, so at any given step all strategies see the same item pair and a
teacher queried at the same beta gives the same answer. Results are collected
in trial order, making every CSV artifact byte-reproducible from its header.
"""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .belief import Belief, MetricKind, gaussian_prior, log_loss, mse, uniform_prior, update
from .grid import WeightGrid
from .loop import LoopConfig, SelectionStrategy, learn_reward_model
from .queries import generate_query, restaurant_source, scaled_magnitude_source, unit_box_source
from .selection import argmin_smallest_beta, pool_expected_metrics
from .teachers import SimulatedTeacherWorld, TeacherPool

__all__ = [
    "COMPARISON_STRATEGIES",
    "BetaTraceResult",
    "ComparisonResult",
    "ConvergenceResult",
    "GaussianBeliefSpec",
    "PhaseMapResult",
    "default_pool",
    "run_beta_trace",
    "run_convergence_check",
    "run_phase_map",
    "run_strategy_comparison",
    "write_beta_trace_csv",
    "write_comparison_csv",
    "write_convergence_csv",
    "write_phase_map_csv",
]

RNG_NAME = "pcg64"

# desk-scale defaults keep a full comparison run in the tens of seconds;
# paper-scale values (100 trials, 21 points per axis) sit behind --full-scale
DESK_TRIALS = 20
DESK_GRID_POINTS = 11

COMPARISON_STRATEGIES = (
    "expected_mse",
    "expected_ll",
    "largest_beta",
    "random_beta",
    "fixed_beta_one",
)


def default_pool() -> TeacherPool:
    """21 teachers with rationality evenly spaced over [0, 4]."""
    return TeacherPool.from_linspace(0.0, 4.0, 21)


def _threads() -> int:
    raw = os.environ.get("VOI_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"VOI_THREADS must be an integer, got {raw!r}")


def _map_in_order(fn, count: int, threads: int | None = None):
    """Run ``fn(i)`` for i in range(count), returning results in index order."""
    threads = _threads() if threads is None else max(1, threads)
    if threads == 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(count)))


def _build_id(header_lines) -> str:
    digest = hashlib.sha256("\n".join(header_lines).encode()).hexdigest()[:12]
    return f"voilearn-{__version__}+cfg.{digest}"


def _grid_spec(grid: WeightGrid) -> str:
    bounds = ";".join(f"{lo:g}:{hi:g}" for lo, hi in grid.bounds)
    points = ";".join(str(p) for p in grid.points_per_axis)
    return f"bounds={bounds} points={points}"


def _header(kind: str, seed, pool: TeacherPool | None, grid: WeightGrid | None, extra=()) -> list[str]:
    lines = [f"artifact: {kind}", f"rng: {RNG_NAME}", f"seed: {seed}"]
    if pool is not None:
        lines.append("pool: " + ",".join(f"{b:g}" for b in pool.betas))
    if grid is not None:
        lines.append(f"grid: {_grid_spec(grid)}")
    lines.extend(extra)
    # stable free-text build field: hashing the config (not a timestamp)
    # keeps identical configs byte-identical across reruns
    lines.insert(1, f"build: {_build_id(lines)}")
    return lines


def _write_csv(path, header_lines, columns, rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


@dataclass(frozen=True)
class GaussianBeliefSpec:
    """A discretized Gaussian belief on a one-dimensional grid."""

    mu: float
    sigma: float
    grid: WeightGrid

    def __post_init__(self):
        if self.grid.dims != 1:
            raise ValueError("Gaussian belief specs are one-dimensional")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    def build(self) -> Belief:
        return gaussian_prior(self.grid, self.mu, self.sigma)


@dataclass(frozen=True)
class PhaseMapResult:
    mu_values: tuple[float, ...]
    sigma_values: tuple[float, ...]
    best_beta_mse: np.ndarray  # (len(mu), len(sigma))
    best_beta_ll: np.ndarray
    pool: TeacherPool
    grid: WeightGrid


def run_phase_map(mu_axis, sigma_axis, pool: TeacherPool, grid: WeightGrid, threads=None) -> PhaseMapResult:
    """Most informative beta for every Gaussian belief in a (mu, sigma) sweep.

    Uses a fixed unit feature difference on a one-dimensional grid; each
    sweep point is scored under both metrics.
    """
    if grid.dims != 1:
        raise ValueError("phase map runs on a one-dimensional grid")
    mu_values = tuple(float(m) for m in mu_axis)
    sigma_values = tuple(float(s) for s in sigma_axis)
    betas = pool.betas_array
    phi = np.array([1.0])

    def one_point(flat_index: int):
        i, j = divmod(flat_index, len(sigma_values))
        belief = GaussianBeliefSpec(mu_values[i], sigma_values[j], grid).build()
        vals_mse = pool_expected_metrics(belief, phi, pool, MetricKind.MSE)
        vals_ll = pool_expected_metrics(belief, phi, pool, MetricKind.LOG_LOSS)
        return (
            betas[argmin_smallest_beta(vals_mse, betas)],
            betas[argmin_smallest_beta(vals_ll, betas)],
        )

    results = _map_in_order(one_point, len(mu_values) * len(sigma_values), threads)
    best = np.array(results).reshape(len(mu_values), len(sigma_values), 2)
    return PhaseMapResult(
        mu_values=mu_values,
        sigma_values=sigma_values,
        best_beta_mse=best[:, :, 0],
        best_beta_ll=best[:, :, 1],
        pool=pool,
        grid=grid,
    )


def write_phase_map_csv(result: PhaseMapResult, path, seed="n/a") -> None:
    header = _header("phase_map", seed, result.pool, result.grid)
    rows = []
    for i, mu in enumerate(result.mu_values):
        for j, sigma in enumerate(result.sigma_values):
            rows.append((mu, sigma, float(result.best_beta_mse[i, j]), float(result.best_beta_ll[i, j])))
    _write_csv(path, header, ("mu", "sigma", "best_beta_mse", "best_beta_ll"), rows)


_STRATEGY_SETUP = {
    "expected_mse": (SelectionStrategy.EXPECTED_METRIC, MetricKind.MSE),
    "expected_ll": (SelectionStrategy.EXPECTED_METRIC, MetricKind.LOG_LOSS),
    "largest_beta": (SelectionStrategy.LARGEST_BETA, MetricKind.MSE),
    "random_beta": (SelectionStrategy.RANDOM_BETA, MetricKind.MSE),
    "fixed_beta_one": (SelectionStrategy.FIXED_BETA_ONE, MetricKind.MSE),
}


@dataclass(frozen=True)
class ComparisonResult:
    """Per-strategy metric traces on shared query/noise streams.

    ``mse``/``log_loss`` have shape (strategies, trials, steps + 1); index 0
    along the last axis is the shared prior. ``chosen_beta`` has shape
    (strategies, trials, steps).
    """

    strategy_labels: tuple[str, ...]
    mse: np.ndarray
    log_loss: np.ndarray
    chosen_beta: np.ndarray
    query_digests: tuple[tuple[str, ...], ...]  # (trials, steps), shared by all strategies
    pool: TeacherPool
    grid: WeightGrid
    seed: int
    trials: int
    steps: int


def _make_query_source(kind: str, rng: np.random.Generator, grid: WeightGrid, beta_scale: float):
    if kind == "auto":
        kind = "restaurants" if grid.dims == 3 else "unit_box"
    if kind == "restaurants":
        return restaurant_source(rng)
    if kind == "unit_box":
        return unit_box_source(rng, grid.dims)
    if kind == "scaled":
        weight_scale = max(max(abs(lo), abs(hi)) for lo, hi in grid.bounds)
        return scaled_magnitude_source(rng, beta_scale, weight_scale)
    raise ValueError(f"unknown query kind {kind!r}")


def run_strategy_comparison(
    trials: int = DESK_TRIALS,
    steps: int = 100,
    pool: TeacherPool | None = None,
    grid: WeightGrid | None = None,
    seed: int = 0,
    strategies=COMPARISON_STRATEGIES,
    query_kind: str = "auto",
    threads=None,
) -> ComparisonResult:
    """Run every strategy over shared trials and record per-step metrics.

    Each trial samples a true weight vector from the uniform prior (a cell
    center), then replays the identical query and teacher-noise streams for
    every strategy, so differences between strategies come only from which
    beta they query.
    """
    pool = default_pool() if pool is None else pool
    grid = WeightGrid.cube(3, points=DESK_GRID_POINTS) if grid is None else grid
    labels = tuple(strategies)
    for label in labels:
        if label not in _STRATEGY_SETUP:
            raise ValueError(f"unknown strategy {label!r}")

    n_s = len(labels)
    mse_arr = np.zeros((n_s, trials, steps + 1))
    ll_arr = np.zeros((n_s, trials, steps + 1))
    beta_arr = np.zeros((n_s, trials, steps))
    prior = uniform_prior(grid)
    trial_seeds = np.random.SeedSequence(seed).spawn(trials)

    def one_trial(t: int):
        ss_w, ss_q, ss_n, ss_rb = trial_seeds[t].spawn(4)
        w_idx = int(np.random.default_rng(ss_w).integers(grid.cell_count))
        w_true = grid.cell_centers[w_idx]
        prior_mse = mse(prior, w_true)
        prior_ll = log_loss(prior, w_true)
        out = []
        digests = None
        for label in labels:
            strategy, metric = _STRATEGY_SETUP[label]
            config = LoopConfig(
                metric=metric, entropy_threshold=0.0, max_steps=max(steps, 1), strategy=strategy
            )
            if steps == 0:
                out.append((prior_mse, prior_ll, [], [], []))
                continue
            source = _make_query_source(query_kind, np.random.default_rng(ss_q), grid, pool.max_beta)
            world = SimulatedTeacherWorld(w_true, np.random.default_rng(ss_n))
            record = learn_reward_model(
                prior, pool, config, source, world, rng=np.random.default_rng(ss_rb)
            )
            step_digests = tuple(s.query_digest for s in record.steps)
            if digests is None:
                digests = step_digests
            elif digests != step_digests:
                raise AssertionError("strategies consumed different query streams")
            out.append(
                (
                    prior_mse,
                    prior_ll,
                    [s.mse for s in record.steps],
                    [s.log_loss for s in record.steps],
                    [s.chosen_beta for s in record.steps],
                )
            )
        return out, digests or ()

    results = _map_in_order(one_trial, trials, threads)
    all_digests = []
    for t, (out, digests) in enumerate(results):
        all_digests.append(digests)
        for s_idx, (p_mse, p_ll, mses, lls, betas) in enumerate(out):
            mse_arr[s_idx, t, 0] = p_mse
            ll_arr[s_idx, t, 0] = p_ll
            if steps:
                mse_arr[s_idx, t, 1:] = mses
                ll_arr[s_idx, t, 1:] = lls
                beta_arr[s_idx, t, :] = betas

    return ComparisonResult(
        strategy_labels=labels,
        mse=mse_arr,
        log_loss=ll_arr,
        chosen_beta=beta_arr,
        query_digests=tuple(all_digests),
        pool=pool,
        grid=grid,
        seed=seed,
        trials=trials,
        steps=steps,
    )


def write_comparison_csv(result: ComparisonResult, path) -> None:
    header = _header(
        "comparison",
        result.seed,
        result.pool,
        result.grid,
        (f"trials: {result.trials}", f"steps: {result.steps}"),
    )
    rows = []
    for s_idx, label in enumerate(result.strategy_labels):
        for step in range(result.steps + 1):
            rows.append(
                (
                    label,
                    step,
                    float(result.mse[s_idx, :, step].mean()),
                    float(result.mse[s_idx, :, step].std()),
                    float(result.log_loss[s_idx, :, step].mean()),
                    float(result.log_loss[s_idx, :, step].std()),
                )
            )
    _write_csv(path, header, ("strategy", "step", "mean_mse", "std_mse", "mean_ll", "std_ll"), rows)


@dataclass(frozen=True)
class BetaTraceResult:
    """Mean/std of the selected beta per step for the two active strategies."""

    metric_labels: tuple[str, ...]  # ("mse", "ll")
    mean_beta: np.ndarray  # (2, steps)
    std_beta: np.ndarray
    comparison: ComparisonResult


def run_beta_trace(
    trials: int = DESK_TRIALS,
    steps: int = 100,
    pool: TeacherPool | None = None,
    grid: WeightGrid | None = None,
    seed: int = 0,
    threads=None,
) -> BetaTraceResult:
    """Trace which rationality each expected-metric strategy selects over training."""
    comparison = run_strategy_comparison(
        trials=trials,
        steps=steps,
        pool=pool,
        grid=grid,
        seed=seed,
        strategies=("expected_mse", "expected_ll"),
        threads=threads,
    )
    return BetaTraceResult(
        metric_labels=("mse", "ll"),
        mean_beta=comparison.chosen_beta.mean(axis=1),
        std_beta=comparison.chosen_beta.std(axis=1),
        comparison=comparison,
    )


def write_beta_trace_csv(result: BetaTraceResult, path) -> None:
    comp = result.comparison
    header = _header(
        "beta_trace",
        comp.seed,
        comp.pool,
        comp.grid,
        (f"trials: {comp.trials}", f"steps: {comp.steps}"),
    )
    rows = []
    for m_idx, label in enumerate(result.metric_labels):
        for step in range(comp.steps):
            rows.append(
                (label, step + 1, float(result.mean_beta[m_idx, step]), float(result.std_beta[m_idx, step]))
            )
    _write_csv(path, header, ("metric", "step", "mean_beta", "std_beta"), rows)


@dataclass(frozen=True)
class ConvergenceResult:
    """Posterior mass at the true cell, per trial and step."""

    true_cell_mass: np.ndarray  # (trials, queries + 1)
    true_indices: tuple[int, ...]
    beta: float
    grid: WeightGrid
    seed: int
    threshold: float = 0.99

    @property
    def fraction_converged(self) -> float:
        return float(np.mean(self.true_cell_mass[:, -1] >= self.threshold))


def run_convergence_check(
    trials: int = 100,
    queries: int = 2000,
    beta: float = 2.0,
    grid: WeightGrid | None = None,
    seed: int = 0,
    query_kind: str = "scaled",
    threads=None,
) -> ConvergenceResult:
    """Posterior concentration under repeated queries to a single teacher.

    Samples the true weights from the uniform prior, replays random queries,
    and records the posterior mass at the true cell after every update. The
    default ``scaled`` queries size their magnitudes to the choice model's
    informative band (see :func:`scaled_magnitude_source`), so any positive
    finite beta concentrates. With ``unit_box`` queries and a huge beta the
    likelihoods become effectively step-like and the mass instead plateaus
    across all cells whose logit signs match the truth's; the per-step trace
    makes that plateau visible rather than hiding it.
    """
    if not beta > 0:
        raise ValueError(f"convergence check needs beta > 0, got {beta}")
    grid = WeightGrid.cube(1, points=11) if grid is None else grid
    if grid.dims != 1:
        raise ValueError("convergence check runs on a one-dimensional grid")
    if query_kind not in ("scaled", "unit_box"):
        raise ValueError(f"unknown query kind {query_kind!r}")
    prior = uniform_prior(grid)
    trial_seeds = np.random.SeedSequence(seed).spawn(trials)
    weight_scale = max(max(abs(lo), abs(hi)) for lo, hi in grid.bounds)

    def one_trial(t: int):
        ss_w, ss_q, ss_n = trial_seeds[t].spawn(3)
        idx = int(np.random.default_rng(ss_w).integers(grid.cell_count))
        w_true = grid.cell_centers[idx]
        rng_q = np.random.default_rng(ss_q)
        if query_kind == "scaled":
            source = scaled_magnitude_source(rng_q, beta, weight_scale)
        else:
            source = unit_box_source(rng_q, 1)
        world = SimulatedTeacherWorld(w_true, np.random.default_rng(ss_n))
        belief = prior
        masses = np.empty(queries + 1)
        masses[0] = belief.mass_at(idx)
        for q in range(1, queries + 1):
            phi_i, phi_j = generate_query(source)
            phi_diff = phi_i - phi_j
            preference = world.answer(phi_diff, beta)
            belief = update(belief, preference, phi_diff, beta)
            masses[q] = belief.mass_at(idx)
        return idx, masses

    results = _map_in_order(one_trial, trials, threads)
    return ConvergenceResult(
        true_cell_mass=np.stack([m for _, m in results]),
        true_indices=tuple(i for i, _ in results),
        beta=beta,
        grid=grid,
        seed=seed,
    )


def write_convergence_csv(result: ConvergenceResult, path) -> None:
    header = _header(
        "convergence",
        result.seed,
        None,
        result.grid,
        (
            f"beta: {result.beta:g}",
            f"trials: {result.true_cell_mass.shape[0]}",
            f"queries: {result.true_cell_mass.shape[1] - 1}",
            f"fraction_final_mass_ge_{result.threshold:g}: {result.fraction_converged!r}",
        ),
    )
    rows = []
    for t in range(result.true_cell_mass.shape[0]):
        for step in range(result.true_cell_mass.shape[1]):
            rows.append((t, step, float(result.true_cell_mass[t, step])))
    _write_csv(path, header, ("trial", "step", "true_cell_mass"), rows)
