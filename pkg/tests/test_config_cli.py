import shutil
import subprocess
import sys

import pytest

from bdop import ConfigError
from bdop.cli import main
from bdop.config import ExperimentConfig, load_config, parse_config
from bdop.experiments import ExperimentReport, run_experiment

SMALL_KERNEL = """\
# quick kernel run
experiment = kernel-normality
x = 0.3
n_values = 16, 64
grid = -3, 3, 401
mc_samples = 4000
seed = 11
tolerance = 0.1
"""

WEIGHTED = """\
experiment = bv-limit
x = 0.5
n_values = 32 128

[f]
piece(0, 0.5): 0
piece(0.5, 1): 1

[w]
piece(0, 0.5): 1
piece(0.5, 1): 2
"""


def _write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_full_config():
    cfg = parse_config(WEIGHTED)
    assert cfg.experiment == "bv-limit"
    assert cfg.n_values == [32, 128]
    assert cfg.f.one_sided_limits(0.5).right == 1.0
    assert cfg.w.one_sided_limits(0.5).ratio == 2.0
    assert cfg.seed == 0


def test_parse_keeps_64_bit_seed():
    cfg = parse_config("experiment = nu-table\nseed = 18446744073709551615\n")
    assert cfg.seed == 2**64 - 1


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("experiment = nu-table\nx = 2\n", 2, "x must"),
        ("experiment = nu-table\n\nbogus = 1\n", 3, "unknown key"),
        ("experiment = nu-table\nx = 0.5\nx = 0.4\n", 3, "duplicate"),
        ("experiment = nu-table\nn_values = 64, 16\n", 2, "sorted"),
        ("experiment = nu-table\nseed = -4\n", 2, "seed"),
        ("experiment = nu-table\ngrid = 1, 0, 10\n", 2, "grid"),
        ("experiment = nu-table\nmc_samples = 2.5\n", 2, "integer"),
        ("experiment = nu-table\nthis is not a setting\n", 2, "key = value"),
        ("experiment = bv-limit\n[f]\npiece(0, 0.5): 0\npiece(0.6, 1): 1\n", 3, "gap"),
        ("experiment = bv-limit\n[g]\n", 2, "unknown section"),
        ("experiment = warp-drive\n", 1, "unknown experiment"),
    ],
)
def test_config_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)


def test_config_experiment_mismatch():
    with pytest.raises(ConfigError, match="not 'nu-table'"):
        parse_config("experiment = bv-limit\n", "nu-table")
    assert parse_config("x = 0.2\n", "nu-table").experiment == "nu-table"
    with pytest.raises(ConfigError):
        parse_config("x = 0.2\n")


def test_load_config(tmp_path):
    cfg = load_config(_write(tmp_path, WEIGHTED))
    assert cfg.experiment == "bv-limit"


def test_report_csv_format():
    rep = ExperimentReport("x", ["n", "v"], [[3, 0.1], [10, 1 / 3]])
    assert rep.to_csv() == "n,v\n3,0.10000000000000001\n10,0.33333333333333331\n"
    assert rep.passed


def test_kernel_mc_column_optional():
    cfg = ExperimentConfig("kernel-normality", x=0.3, n_values=[16, 64], grid=(-3, 3, 201))
    rep = run_experiment(cfg)
    assert rep.header == ["n", "ks_exact"]
    cfg.mc_samples = 3000
    rep = run_experiment(cfg)
    assert rep.header == ["n", "ks_exact", "ks_mc", "dkw_bound"]
    assert all(v >= 0 for row in rep.rows for v in row[1:])


def test_lupas_and_weighted_runs():
    rep = run_experiment(parse_config(WEIGHTED))
    assert rep.passed
    assert rep.column("predicted_limit")[0] == pytest.approx(0.6137056388801094)
    rep = run_experiment(ExperimentConfig("lupas-limit", n_values=[16, 64], grid=(-3, 3, 13)))
    assert rep.header == ["n", "sup_error"]
    assert rep.passed


def test_cli_exit_zero_and_output(tmp_path, capsys):
    out = tmp_path / "nu.csv"
    assert main(["nu-table", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "r,nu_closed,nu_integral,nu_gaussian,max_discrepancy"
    row = dict(zip(lines[0].split(","), next(l for l in lines[1:] if l.startswith("1,")).split(",")))
    assert float(row["nu_closed"]) == 0.5
    assert float(row["max_discrepancy"]) <= 1e-9
    err = capsys.readouterr().err
    assert "nu-table: PASS" in err


def test_cli_stdout_when_no_output(capsys):
    assert main(["beta-pdf"]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("gamma,scale,sup_error\n")
    assert "[PASS]" in captured.err


def test_cli_exit_one_on_failed_criterion(tmp_path, capsys):
    cfg = _write(tmp_path, "experiment = nu-table\ntolerance = 1e-30\n")
    assert main(["nu-table", "--config", cfg]) == 1
    assert "[FAIL]" in capsys.readouterr().err


def test_cli_exit_two_on_config_error(tmp_path, capsys):
    cfg = _write(tmp_path, "experiment = nu-table\n\nx = 7\n")
    assert main(["nu-table", "--config", cfg]) == 2
    assert "line 3" in capsys.readouterr().err
    assert main(["nu-table", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_cli_exit_two_on_hypothesis_violation(tmp_path):
    text = WEIGHTED.replace("piece(0, 0.5): 1\npiece(0.5, 1): 2", "piece(0, 0.5): 0\npiece(0.5, 1): 0")
    assert main(["bv-limit", "--config", _write(tmp_path, text)]) == 2


def test_cli_seed_validation(capsys):
    assert main(["nu-table", "--seed", str(2**64)]) == 2


def test_cli_deterministic_bytes(tmp_path):
    cfg = _write(tmp_path, SMALL_KERNEL)
    a, b, c = (tmp_path / f"{i}.csv" for i in "abc")
    assert main(["kernel-normality", "--config", cfg, "--output", str(a)]) == 0
    assert main(["kernel-normality", "--config", cfg, "--output", str(b)]) == 0
    assert main(["kernel-normality", "--config", cfg, "--output", str(c), "--seed", "12"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()


def test_threads_do_not_change_output(tmp_path, monkeypatch):
    cfg = _write(tmp_path, SMALL_KERNEL)
    one, many = tmp_path / "1.csv", tmp_path / "4.csv"
    monkeypatch.setenv("BDOP_THREADS", "1")
    main(["kernel-normality", "--config", cfg, "--output", str(one)])
    monkeypatch.setenv("BDOP_THREADS", "4")
    main(["kernel-normality", "--config", cfg, "--output", str(many)])
    assert one.read_bytes() == many.read_bytes()


def test_console_script_runs(tmp_path):
    exe = shutil.which("bdop")
    cmd = [exe] if exe else [sys.executable, "-m", "bdop.cli"]
    proc = subprocess.run(cmd + ["nu-table"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout.startswith("r,")
    bad = subprocess.run(cmd + ["nu-table", "--config", str(tmp_path / "nope")], capture_output=True, text=True)
    assert bad.returncode == 2
