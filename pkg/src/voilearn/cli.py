"""Command-line entry point binding configs and flags to the harness."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .belief import save_belief_csv, uniform_prior
from .config import EXPERIMENTS, ConfigError, parse_config, write_resolved_config
from .experiments import (
    run_beta_trace,
    run_convergence_check,
    run_phase_map,
    run_strategy_comparison,
    write_beta_trace_csv,
    write_comparison_csv,
    write_convergence_csv,
    write_phase_map_csv,
)
from .grid import WeightGrid
from .loop import LoopConfig, SelectionStrategy, learn_reward_model, save_trial_records_csv
from .queries import RESTAURANT_DIMS, restaurant_source, unit_box_source
from .teachers import SimulatedTeacherWorld

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voilearn",
        description="Reward learning from simulated teachers of varying rationality.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True, metavar="|".join(EXPERIMENTS))
    for name in EXPERIMENTS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--steps", type=int)
        p.add_argument("--grid-points", dest="grid_points", type=int)
        p.add_argument("--dims", type=int)
        p.add_argument("--pool", help="comma list or lo:hi:n linspace of teacher betas")
        p.add_argument("--out", help="output directory")
        p.add_argument("--metric", help="mse or ll")
        p.add_argument("--epsilon", type=float, help="entropy convergence threshold (nats)")
        p.add_argument("--full-scale", dest="full_scale", action="store_const", const=True,
                       help="paper-scale preset: 100 trials, 21 grid points per axis")
        if name == "phase_map":
            p.add_argument("--mu", nargs=3, metavar=("LO", "HI", "N"))
            p.add_argument("--sigma", nargs=3, metavar=("LO", "HI", "N"))
        if name == "converge":
            p.add_argument("--beta", type=float)
            p.add_argument("--queries", type=int)
    return parser


def _grid(config) -> WeightGrid:
    return WeightGrid.cube(config.dims, config.lower, config.upper, config.grid_points)


def _run_learn(config) -> None:
    grid = _grid(config)
    prior = uniform_prior(grid)
    loop_config = LoopConfig(
        metric=config.metric,
        entropy_threshold=config.epsilon,
        max_steps=max(config.steps, 1),
        strategy=SelectionStrategy.EXPECTED_METRIC,
    )
    records = []
    final_belief = None
    for trial_ss in np.random.SeedSequence(config.seed).spawn(config.trials):
        ss_w, ss_q, ss_n, ss_rb = trial_ss.spawn(4)
        w_idx = int(np.random.default_rng(ss_w).integers(grid.cell_count))
        w_true = grid.cell_centers[w_idx]
        rng_q = np.random.default_rng(ss_q)
        if config.dims == RESTAURANT_DIMS:
            source = restaurant_source(rng_q)
        else:
            source = unit_box_source(rng_q, config.dims)
        world = SimulatedTeacherWorld(w_true, np.random.default_rng(ss_n))
        record = learn_reward_model(
            prior, config.pool, loop_config, source, world,
            rng=np.random.default_rng(ss_rb), seed=config.seed,
        )
        records.append(record)
        final_belief = record.final_belief
    save_trial_records_csv(
        records,
        config.out / "trial_records.csv",
        strategy_labels=["expected_metric"] * len(records),
        header_lines=(
            f"seed: {config.seed}",
            "pool: " + ",".join(f"{b:g}" for b in config.pool.betas),
            f"metric: {config.metric.value}",
            f"epsilon: {config.epsilon!r}",
        ),
    )
    save_belief_csv(final_belief, config.out / "learned_belief.csv")


def _run(config) -> None:
    config.out.mkdir(parents=True, exist_ok=True)
    write_resolved_config(config, config.out / "run_config.txt")
    if config.experiment == "phase_map":
        result = run_phase_map(config.mu_axis, config.sigma_axis, config.pool, _grid(config))
        write_phase_map_csv(result, config.out / "phase_map.csv", seed=config.seed)
    elif config.experiment == "compare":
        result = run_strategy_comparison(
            trials=config.trials, steps=config.steps, pool=config.pool,
            grid=_grid(config), seed=config.seed,
        )
        write_comparison_csv(result, config.out / "comparison.csv")
    elif config.experiment == "beta_trace":
        result = run_beta_trace(
            trials=config.trials, steps=config.steps, pool=config.pool,
            grid=_grid(config), seed=config.seed,
        )
        write_beta_trace_csv(result, config.out / "beta_trace.csv")
    elif config.experiment == "converge":
        result = run_convergence_check(
            trials=config.trials, queries=config.queries, beta=config.beta,
            grid=_grid(config), seed=config.seed,
        )
        write_convergence_csv(result, config.out / "convergence.csv")
    else:
        _run_learn(config)


def main(argv=None) -> int:
    parser = _build_parser()
    args = vars(parser.parse_args(argv))
    experiment = args.pop("experiment")
    config_path = args.pop("config", None)
    try:
        config = parse_config(experiment, config_path, overrides=args)
        _run(config)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"voilearn: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
