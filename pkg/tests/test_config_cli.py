import numpy as np
import pytest

from voilearn.belief import MetricKind
from voilearn.cli import main
from voilearn.config import ConfigError, parse_config


def test_defaults_match_reference_setup(tmp_path):
    empty = tmp_path / "empty.cfg"
    empty.write_text("")
    config = parse_config("compare", empty)
    assert config.dims == 3
    assert (config.lower, config.upper) == (-10.0, 10.0)
    assert config.grid_points == 21
    assert len(config.pool) == 21
    assert np.allclose(config.pool.betas_array, np.linspace(0, 4, 21))
    assert config.trials == 100
    assert config.steps == 100
    assert config.metric is MetricKind.MSE
    assert config.seed == 0


def test_flags_override_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("seed = 3\ntrials = 9\n")
    config = parse_config("compare", cfg, overrides={"seed": 7})
    assert config.seed == 7
    assert config.trials == 9


def test_pool_linspace_expansion(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("pool = 0:4:21\n")
    config = parse_config("compare", cfg)
    expected = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0,
                2.2, 2.4, 2.6, 2.8, 3.0, 3.2, 3.4, 3.6, 3.8, 4.0]
    assert np.allclose(config.pool.betas_array, expected, atol=1e-12)


def test_pool_comma_list():
    config = parse_config("compare", overrides={"pool": "0.5,1.5,2.5"})
    assert config.pool.betas == (0.5, 1.5, 2.5)


def test_unknown_key_names_the_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("banana = 1\n")
    with pytest.raises(ConfigError, match="banana"):
        parse_config("compare", cfg)


def test_bad_metric_names_the_field():
    with pytest.raises(ConfigError, match="metric"):
        parse_config("compare", overrides={"metric": "accuracy"})


def test_out_of_range_values_name_the_field():
    with pytest.raises(ConfigError, match="trials"):
        parse_config("compare", overrides={"trials": 0})
    with pytest.raises(ConfigError, match="epsilon"):
        parse_config("learn", overrides={"epsilon": -1.0})
    with pytest.raises(ConfigError, match="beta"):
        parse_config("converge", overrides={"beta": 0.0})


def test_experiment_specific_defaults():
    phase = parse_config("phase_map")
    assert phase.dims == 1 and phase.grid_points == 201
    assert len(phase.mu_axis) == 33 and len(phase.sigma_axis) == 25
    assert len(phase.pool) == 40 and phase.pool.betas[0] == 0.05
    conv = parse_config("converge")
    assert conv.dims == 1 and conv.grid_points == 11
    assert conv.queries == 2000 and conv.beta == 2.0


def test_full_scale_preset():
    config = parse_config("compare", overrides={"trials": 5, "grid_points": 7, "full_scale": True})
    assert config.trials == 100
    assert config.grid_points == 21


def test_comment_and_blank_lines(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\n\nseed = 4  # trailing\n")
    assert parse_config("compare", cfg).seed == 4


# -- CLI ----------------------------------------------------------------------


def run_cli(args):
    return main(args)


def test_cli_compare_row_count(tmp_path):
    out = tmp_path / "out"
    code = run_cli([
        "compare", "--trials", "2", "--steps", "5", "--grid-points", "5",
        "--pool", "0:4:5", "--seed", "1", "--out", str(out),
    ])
    assert code == 0
    csv = out / "comparison.csv"
    rows = [l for l in csv.read_text().splitlines() if not l.startswith("#")]
    body = rows[1:]
    assert len(body) == 5 * (5 + 1)  # 5 strategies x (5 steps + prior row)
    per_step_rows = [r for r in body if int(r.split(",")[1]) >= 1]
    assert len(per_step_rows) == 5 * 5
    assert (out / "run_config.txt").exists()


def test_cli_compare_determinism(tmp_path):
    args = ["compare", "--trials", "2", "--steps", "4", "--grid-points", "5",
            "--pool", "0:4:5", "--seed", "9"]
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert run_cli(args + ["--out", str(out_a)]) == 0
    assert run_cli(args + ["--out", str(out_b)]) == 0
    assert (out_a / "comparison.csv").read_bytes() == (out_b / "comparison.csv").read_bytes()


def test_cli_phase_map_degenerate_sweep(tmp_path):
    out = tmp_path / "out"
    code = run_cli([
        "phase_map", "--mu", "0", "0", "1", "--sigma", "3", "3", "1",
        "--grid-points", "101", "--pool", "0.05:4:10", "--out", str(out),
    ])
    assert code == 0
    rows = [l for l in (out / "phase_map.csv").read_text().splitlines() if not l.startswith("#")]
    assert len(rows) == 2  # header + one sweep point
    mu, sigma, best_mse, best_ll = rows[1].split(",")
    assert float(mu) == 0.0 and float(sigma) == 3.0
    assert float(best_mse) == 4.0 and float(best_ll) == 4.0


def test_cli_invalid_metric_is_diagnosed(tmp_path, capsys):
    code = run_cli(["compare", "--metric", "accuracy", "--out", str(tmp_path / "x")])
    assert code != 0
    assert "metric" in capsys.readouterr().err


def test_cli_converge_smoke(tmp_path):
    out = tmp_path / "out"
    code = run_cli([
        "converge", "--trials", "2", "--queries", "50", "--beta", "2", "--out", str(out),
    ])
    assert code == 0
    rows = [l for l in (out / "convergence.csv").read_text().splitlines() if not l.startswith("#")]
    assert len(rows) == 1 + 2 * 51


def test_cli_learn_smoke(tmp_path):
    out = tmp_path / "out"
    code = run_cli([
        "learn", "--trials", "1", "--steps", "10", "--grid-points", "5",
        "--pool", "0:4:5", "--epsilon", "0.5", "--out", str(out),
    ])
    assert code == 0
    assert (out / "trial_records.csv").exists()
    assert (out / "learned_belief.csv").exists()


def test_cli_beta_trace_smoke(tmp_path):
    out = tmp_path / "out"
    code = run_cli([
        "beta_trace", "--trials", "2", "--steps", "3", "--grid-points", "5",
        "--pool", "0:4:5", "--seed", "2", "--out", str(out),
    ])
    assert code == 0
    rows = [l for l in (out / "beta_trace.csv").read_text().splitlines() if not l.startswith("#")]
    assert len(rows) == 1 + 2 * 3


def test_cli_config_file_plus_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("trials = 2\nsteps = 3\ngrid_points = 5\npool = 0:4:5\nseed = 3\n")
    out = tmp_path / "out"
    code = run_cli(["compare", "--config", str(cfg), "--seed", "7", "--out", str(out)])
    assert code == 0
    resolved = (out / "run_config.txt").read_text()
    assert "seed = 7" in resolved
    assert "trials = 2" in resolved
