import csv
import io
import json
import math
import subprocess
import sys

import pytest

import oracles
from swanson_metric import cli
from swanson_metric.config import ConfigError, RunConfig, build_config, parse_config_text


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


# sweep -------------------------------------------------------------------

def test_sweep_columns_and_band(capsys):
    code, out, _ = run(capsys, "sweep", "--steps", "41")
    assert code == cli.EXIT_OK
    header = out.split("\r\n")[0]
    assert header.split(",") == cli.SWEEP_COLUMNS
    rows = rows_of(out)
    assert len(rows) == 41
    lo, hi = (float(v) for v in oracles.band(1.0, 0.5, 0.25))
    for r in rows:
        z = float(r["z"])
        inside = lo <= z <= hi
        assert (r["valid"] == "false") == inside
        if inside:
            assert all(r[c] == "" for c in ("epsilon", "eta", "theta_sq", "mu", "nu", "mass"))
        else:
            assert abs(float(r["mu_nu_minus_omega_sq"])) <= 1e-11
    assert sum(r["valid"] == "false" for r in rows) == 7


def test_sweep_hermitian_case(capsys):
    code, out, _ = run(capsys, "sweep", "--alpha", "0.3", "--beta", "0.3")
    assert code == 0
    rows = rows_of(out)
    assert all(r["valid"] == "true" for r in rows)
    assert all(float(r["epsilon"]) == 0.0 for r in rows)


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--steps", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc) == 3
    assert set(doc[0]) == set(cli.SWEEP_COLUMNS)


def test_sweep_full_precision(capsys):
    _, out, _ = run(capsys, "sweep", "--steps", "1", "--z-min", "0", "--z-max", "0")
    r = rows_of(out)[0]
    assert float(r["z_minus"]) == pytest.approx(float(oracles.band(1.0, 0.5, 0.25)[0]), abs=1e-16)
    assert len(r["z_minus"].replace("0.", "", 1)) == 17


def test_sweep_deterministic(capsys):
    a = run(capsys, "sweep")[1]
    b = run(capsys, "sweep")[1]
    assert a == b


def test_sweep_to_file(tmp_path, capsys):
    path = tmp_path / "s.csv"
    code, out, _ = run(capsys, "sweep", "--out", str(path), "--steps", "5")
    assert code == 0 and "sweep:" in out
    assert path.read_bytes().count(b"\r\n") == 6


# exit codes --------------------------------------------------------------

def test_unwritable_output(tmp_path, capsys):
    code, _, err = run(capsys, "sweep", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == cli.EXIT_IO and "output error" in err


@pytest.mark.parametrize("argv", [
    ["sweep", "--z-min", "0.5", "--z-max", "0.2"],
    ["sweep", "--steps", "0"],
    ["sweep", "--omega", "-1"],
    ["sweep", "--branch", "sideways"],
    ["verify", "--dim", "16", "--sector", "9"],
    ["verify", "--dim", "6", "--steps", "1"],
    ["sweep", "--alpha", "1", "--beta", "1", "--omega", "1"],
    ["spectrum"],
])
def test_config_errors(argv, capsys):
    assert run(capsys, *argv)[0] == cli.EXIT_CONFIG


def test_spectrum_invalid_z(capsys):
    code, out, err = run(capsys, "spectrum", "--z", "0.7")
    assert code == cli.EXIT_INVALID_Z and out == "" and "singular band" in err
    assert run(capsys, "spectrum", "--z", "-0.7", "--branch", "mirrored")[0] == cli.EXIT_INVALID_Z
    assert run(capsys, "spectrum", "--z", "0.7", "--branch", "mirrored")[0] == cli.EXIT_OK


def test_spectrum_ground_level(capsys):
    code, out, _ = run(capsys, "spectrum", "--z", "0")
    assert code == 0
    rows = rows_of(out)
    assert out.split("\r\n")[0].split(",") == cli.SPECTRUM_COLUMNS
    assert len(rows) == 16
    assert float(rows[0]["eigenvalue"]) == pytest.approx(math.sqrt(0.5) / 2, abs=1e-12)
    assert max(float(r["abs_error"]) for r in rows[:8]) <= 1e-8


# verify ------------------------------------------------------------------

def test_verify_small_dim_fails(capsys):
    code, out, err = run(capsys, "verify", "--dim", "8", "--steps", "5")
    assert code == cli.EXIT_FAILED
    assert out.startswith("check,z,branch,residual,tolerance,passed,note\r\n")
    assert "failed" in err


def test_verify_representable_range_passes(capsys):
    code, _, err = run(capsys, "verify", "--z-min", "-1", "--z-max", "0.25", "--steps", "6")
    assert code == cli.EXIT_OK, err


def test_verify_all_skipped(capsys):
    code, out, err = run(capsys, "verify", "--z-min", "0.6", "--z-max", "0.8", "--steps", "3")
    assert code == cli.EXIT_OK
    assert "warning" in err
    assert len(rows_of(out)) == 3


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--steps", "2", "--dim", "16", "--format", "json")
    doc = json.loads(out)
    assert {"entries", "skipped", "summary"} <= set(doc)
    assert code in (0, 1)


def test_verify_deterministic(capsys):
    argv = ("verify", "--steps", "3", "--dim", "24")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


# special cases -----------------------------------------------------------

def test_special_cases_demo(capsys):
    code, out, _ = run(capsys, "special-cases")
    rows = {r["case"]: r for r in rows_of(out)}
    assert out.split("\r\n")[0].split(",") == cli.SPECIAL_COLUMNS
    assert float(rows["i"]["residual"]) <= 1e-10
    assert code == 0


def test_special_cases_hermitian(capsys):
    code, out, _ = run(capsys, "special-cases", "--alpha", "0.2", "--beta", "0.2")
    assert code == 0
    assert all(float(r["residual"]) == 0.0 for r in rows_of(out))


def test_special_cases_mirrored(capsys):
    code, out, _ = run(capsys, "special-cases", "--branch", "mirrored")
    rows = {r["case"]: r for r in rows_of(out)}
    assert float(rows["ii"]["z"]) == -1.0 and float(rows["iii"]["z"]) == 1.0
    assert code == 0


# config ------------------------------------------------------------------

def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# demo\nalpha = 0.3\nbeta=0.3\nsteps=3\nz-min = -0.5\n")
    code, out, _ = run(capsys, "sweep", "--config", str(cfg), "--steps", "2")
    rows = rows_of(out)
    assert code == 0 and len(rows) == 2
    assert float(rows[0]["z"]) == -0.5
    assert float(rows[0]["epsilon"]) == 0.0


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("gamma=1\n")
    code, _, err = run(capsys, "sweep", "--config", str(cfg))
    assert code == cli.EXIT_CONFIG and "gamma" in err


def test_config_missing_file(tmp_path, capsys):
    assert run(capsys, "sweep", "--config", str(tmp_path / "nope.cfg"))[0] == cli.EXIT_CONFIG


def test_flags_and_file_parse_identically(tmp_path):
    text = "omega=2\nalpha=0.1\nbeta=0.7\nz_min=-0.3\nz_max=0.4\nsteps=9\nbranch=mirrored\ndim=32\nsector=4\nformat=json\n"
    from_file = build_config(parse_config_text(text), {})
    args = cli.build_parser().parse_args([
        "sweep", "--omega", "2", "--alpha", "0.1", "--beta", "0.7", "--z-min", "-0.3", "--z-max", "0.4",
        "--steps", "9", "--branch", "mirrored", "--dim", "32", "--sector", "4", "--format", "json",
    ])
    assert cli.config_from_args(args) == from_file


def test_config_defaults():
    cfg = RunConfig()
    assert (cfg.omega, cfg.alpha, cfg.beta, cfg.steps, cfg.dim) == (1.0, 0.5, 0.25, 41, 64)
    assert cfg.effective_sector == 16
    with pytest.raises(ConfigError):
        parse_config_text("just words\n")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "swanson_metric", "sweep", "--steps", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("z,branch,valid")
