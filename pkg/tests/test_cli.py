import json
import subprocess
import sys

import pytest

from binchain import cli


def run_cli(args, env_extra=None):
    import os

    env = dict(os.environ)
    env.pop(cli.SEED_ENV_VAR, None)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        [sys.executable, "-m", "binchain.cli"] + args,
        capture_output=True, text=True, env=env,
    )
    return proc


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_classify_unique(tmp_path):
    cfg = write_config(tmp_path, {"model": {"type": "finite", "coeffs": [0.5, -0.5]}})
    proc = run_cli(["classify", "--config", cfg])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["verdict"] == "unique"
    assert report["gcd"] == 1
    assert report["condition_ii"] is True


def test_classify_nonunique_variants(tmp_path):
    for coeffs, kind in (
        ([0.5, 0.5], "nonunique_constant"),
        ([-0.5, 0.5], "nonunique_checkerboard"),
        ([0.0, 0.5, 0.0, -0.5], "nonunique_gcd"),
    ):
        proc = run_cli(["classify", "--coeffs"] + [str(c) for c in coeffs])
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["verdict"] == kind


def test_validate_failure_exit_code():
    proc = run_cli(["validate", "--coeffs", "0.5", "0.25"])
    assert proc.returncode == cli.EXIT_CONFIG


def test_missing_seed_is_an_error(tmp_path):
    cfg = write_config(tmp_path, {"model": {"type": "finite", "coeffs": [1.0]}})
    proc = run_cli(["simulate", "--config", cfg, "--length", "2"])
    assert proc.returncode == cli.EXIT_CONFIG


def test_seed_env_var_lowest_precedence(tmp_path):
    cfg = write_config(tmp_path, {"model": {"type": "finite", "coeffs": [1.0]}})
    a = run_cli(["simulate", "--config", cfg, "--length", "2"],
                env_extra={cli.SEED_ENV_VAR: "5"})
    assert a.returncode == 0
    b = run_cli(["simulate", "--config", cfg, "--length", "2", "--seed", "5"])
    assert a.stdout == b.stdout
    c = run_cli(["simulate", "--config", cfg, "--length", "2", "--seed", "6"],
                env_extra={cli.SEED_ENV_VAR: "5"})
    assert c.stdout != a.stdout or True  # flag wins; records may still differ
    rec_a = json.loads(a.stdout.splitlines()[0])
    rec_c = json.loads(c.stdout.splitlines()[0])
    assert rec_a["seed"] != rec_c["seed"]


def test_simulate_jsonl_determinism(tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"type": "finite", "coeffs": [0.5, -0.5]},
        "seed": 11, "length": 3, "replicas": 20,
    })
    out1, out2 = str(tmp_path / "a.jsonl"), str(tmp_path / "b.jsonl")
    assert run_cli(["simulate", "--config", cfg, "--output", out1]).returncode == 0
    assert run_cli(["simulate", "--config", cfg, "--output", out2]).returncode == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()
    records = [json.loads(line) for line in open(out1)]
    assert len(records) == 20
    for i, rec in enumerate(records):
        assert rec["replica"] == i
        assert len(rec["window"]) == 3
        assert set(rec["window"]) <= {-1, 1}


def test_simulate_csv_format(tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"type": "finite", "coeffs": [1.0]},
        "seed": 3, "length": 2, "replicas": 4, "format": "csv",
    })
    proc = run_cli(["simulate", "--config", cfg])
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert lines[0].strip() == "replica,x1,x2"
    assert len(lines) == 5


def test_simulate_guard_exit_code(tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"type": "finite", "coeffs": [0.0, 1.0]},
        "seed": 1, "length": 2, "replicas": 1, "guard": 100,
    })
    proc = run_cli(["simulate", "--config", cfg])
    assert proc.returncode == cli.EXIT_GUARD


def test_simulate_warns_on_nonunique(tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"type": "finite", "coeffs": [0.5, 0.5]},
        "seed": 1, "length": 2, "replicas": 1,
    })
    proc = run_cli(["simulate", "--config", cfg])
    assert proc.returncode == 0
    assert "warning" in proc.stderr


def test_vonschelling_report(tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"type": "geometric", "q": 0.5},
        "seed": 2, "walks": 200, "max_steps": 100000,
    })
    proc = run_cli(["vonschelling", "--config", cfg])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["censored"] == 0
    assert report["mean_hitting_time"] >= 1.0


def test_boundary_report(tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"type": "finite", "coeffs": [0.5, -0.5]},
        "seed": 2, "replicas": 500, "n_list": [1, 4],
    })
    proc = run_cli(["boundary", "--config", cfg])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert [e["n"] for e in report["estimates"]] == [1, 4]


def test_oracle_report(tmp_path):
    proc = run_cli(["oracle", "--coeffs", "0.5", "-0.5"])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["n_recurrent_classes"] == 1
    assert report["window_law"]["++"] == pytest.approx(1 / 3, abs=1e-9)


def test_oracle_memory_limit_exit_code(tmp_path):
    coeffs = ["0.0"] * 16 + ["1.0"]
    proc = run_cli(["oracle", "--coeffs"] + coeffs)
    assert proc.returncode == cli.EXIT_ORACLE_LIMIT


def test_oracle_rejects_infinite_support(tmp_path):
    cfg = write_config(tmp_path, {"model": {"type": "geometric", "q": 0.5}})
    proc = run_cli(["oracle", "--config", cfg])
    assert proc.returncode == cli.EXIT_ORACLE_LIMIT


def test_compare_pass(tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"type": "finite", "coeffs": [0.5, -0.5]},
        "seed": 9, "replicas": 4000, "window": 2, "threshold": 0.05,
    })
    proc = run_cli(["compare", "--config", cfg])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["result"] == "PASS"
    assert report["tv_distance"] < 0.05


def test_biased_model_schema(tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"type": "finite", "coeffs": [0.5, -0.5], "bias": 1.0},
        "seed": 4, "length": 3, "replicas": 5,
    })
    proc = run_cli(["simulate", "--config", cfg])
    assert proc.returncode == 0
    for line in proc.stdout.strip().splitlines():
        assert json.loads(line)["window"] == [1, 1, 1]


def test_parse_model_geometric_signs():
    model = cli.parse_model({"type": "geometric", "q": 0.5, "signs": ["+", "-"]})
    assert model.sign_theta(1) == 1 and model.sign_theta(2) == -1


def test_parse_model_errors():
    with pytest.raises(cli.ConfigError):
        cli.parse_model({"type": "mystery"})
    with pytest.raises(cli.ConfigError):
        cli.parse_model({"type": "finite"})
    with pytest.raises(cli.ConfigError):
        cli.parse_model({"type": "geometric", "q": 0.5, "signs": ["?"]})
