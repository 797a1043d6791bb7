"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 output error, 4 requested z inside the singular band.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import operators as ops
from . import verification as ver
from .closed_forms import (
    MetricChoice,
    OscillatorParams,
    is_valid,
    metric_scalars,
    singular_band,
    special_case_z,
)
from .config import ConfigError, RunConfig, build_config, load_config_file
from .errors import DimensionError, HermitianCaseError, MatrixOverflowError, SwansonError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_INVALID_Z = 4

SWEEP_COLUMNS = [
    "z", "branch", "valid", "epsilon", "eta", "theta_sq", "mu", "nu",
    "mu_nu_minus_omega_sq", "mass", "z_minus", "z_plus",
]
SPECTRUM_COLUMNS = ["n", "eigenvalue", "expected", "abs_error"]
SPECIAL_COLUMNS = ["case", "z", "branch", "valid", "residual", "tolerance", "passed"]


class OutputError(OSError):
    pass


def _num(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float):
        return ver.fmt(x)
    return str(x)


def render_table(columns: list[str], rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        clean = [{k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in r.items()} for r in rows]
        return json.dumps(ver._json_safe(clean), sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_num(r[c]) for c in columns])
    return buf.getvalue()


def write_output(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror}") from None


def _info(cfg: RunConfig, text: str) -> None:
    """Human-readable lines go to stdout, or stderr when stdout carries the data."""
    stream = sys.stderr if cfg.out == "-" else sys.stdout
    print(text, file=stream)


def _params(cfg: RunConfig) -> OscillatorParams:
    return OscillatorParams(cfg.omega, cfg.alpha, cfg.beta)


def _band(params: OscillatorParams):
    try:
        return singular_band(params)
    except HermitianCaseError:
        return None


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def sweep_rows(cfg: RunConfig) -> list[dict]:
    params = _params(cfg)
    band = _band(params)
    z_lo, z_hi = (math.nan, math.nan) if band is None else band.excluded(cfg.branch)
    rows = []
    for z in ver.default_grid(cfg.steps, cfg.z_min, cfg.z_max):
        s = metric_scalars(params, MetricChoice(z, cfg.branch), strict=False)
        row = {
            "z": z, "branch": cfg.branch.value, "valid": s.valid,
            "epsilon": s.epsilon, "eta": s.eta, "theta_sq": s.theta_sq, "mu": s.mu, "nu": s.nu,
            "mu_nu_minus_omega_sq": s.mu * s.nu - params.big_omega_sq,
            "mass": 1.0 / s.mu if s.valid and s.mu != 0 else math.nan,
            "z_minus": z_lo, "z_plus": z_hi,
        }
        rows.append(row)
    return rows


def cmd_sweep(cfg: RunConfig) -> int:
    rows = sweep_rows(cfg)
    write_output(render_table(SWEEP_COLUMNS, rows, cfg.format), cfg.out)
    n_valid = sum(r["valid"] for r in rows)
    _info(cfg, f"sweep: {len(rows)} points, {n_valid} valid, {len(rows) - n_valid} inside the singular band")
    if n_valid == 0:
        _info(cfg, "warning: every grid point is inside the singular band")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    params = _params(cfg)
    grid = ver.default_grid(cfg.steps, cfg.z_min, cfg.z_max)
    try:
        report = ver.run_suite(params, cfg.dim, grid, cfg.branch, cfg.effective_sector)
    except DimensionError as exc:
        raise ConfigError(str(exc)) from None
    text = report.to_json() if cfg.format == "json" else report.to_csv()
    write_output(text, cfg.out)
    _info(cfg, report.summary_text())
    return EXIT_OK if report.all_passed else EXIT_FAILED


def spectrum_rows(cfg: RunConfig, z: float) -> list[dict]:
    params = _params(cfg)
    choice = MetricChoice(z, cfg.branch)
    h = ops.hermitize(params, choice, cfg.dim)
    dec = ops.resolved_spectrum(h, cfg.effective_sector)
    rows = []
    for n, e in enumerate(dec.eigenvalues):
        expected = ops.expected_level(n, params.big_omega)
        rows.append({"n": n, "eigenvalue": float(e), "expected": expected, "abs_error": abs(float(e) - expected)})
    return rows


def cmd_spectrum(cfg: RunConfig, z: float) -> int:
    if not -1.0 <= z <= 1.0:
        raise ConfigError(f"--z must lie in [-1, 1], got {z}")
    params = _params(cfg)
    if not is_valid(params, MetricChoice(z, cfg.branch)):
        lo, hi = singular_band(params).excluded(cfg.branch)
        print(f"error: z = {z:g} ({cfg.branch.value}) lies in the singular band [{lo:.6g}, {hi:.6g}]", file=sys.stderr)
        return EXIT_INVALID_Z
    rows = spectrum_rows(cfg, z)
    write_output(render_table(SPECTRUM_COLUMNS, rows, cfg.format), cfg.out)
    if len(rows) < cfg.effective_sector:
        _info(cfg, f"note: only {len(rows)} of {cfg.effective_sector} levels resolved at dim {cfg.dim}")
    return EXIT_OK


def special_case_rows(cfg: RunConfig) -> list[dict]:
    params = _params(cfg)
    tol = ver.TOLERANCES["special_case_metric"]
    rows = []
    for case in ("i", "ii", "iii"):
        z = special_case_z(case, cfg.branch)
        choice = MetricChoice(z, cfg.branch)
        row = {"case": case, "z": z, "branch": cfg.branch.value, "valid": is_valid(params, choice),
               "residual": math.nan, "tolerance": tol, "passed": False}
        if row["valid"]:
            try:
                o = ops.build_operator_set(params, choice, cfg.dim, cfg.effective_sector)
                row["residual"] = ver.special_metric_residual(o, case)
            except MatrixOverflowError:
                row["residual"] = math.inf
            row["passed"] = row["residual"] <= tol
        rows.append(row)
    return rows


def cmd_special_cases(cfg: RunConfig) -> int:
    rows = special_case_rows(cfg)
    write_output(render_table(SPECIAL_COLUMNS, rows, cfg.format), cfg.out)
    checked = [r for r in rows if r["valid"]]
    for r in rows:
        if not r["valid"]:
            _info(cfg, f"case ({r['case']}) at z = {r['z']:g} is inside the singular band; not compared")
    return EXIT_OK if all(r["passed"] for r in checked) else EXIT_FAILED


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file; flags override it")
    common.add_argument("--omega", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--z-min", dest="z_min", type=float)
    common.add_argument("--z-max", dest="z_max", type=float)
    common.add_argument("--steps", type=int)
    common.add_argument("--branch", choices=["standard", "mirrored"])
    common.add_argument("--dim", type=int)
    common.add_argument("--sector", type=int)
    common.add_argument("--out", help="output path, '-' for stdout (default)")
    common.add_argument("--format", choices=["csv", "json"])

    parser = _Parser(prog="swanson-metric", description="Metric family of the Swanson oscillator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("sweep", parents=[common], help="closed-form scalars over a z grid")
    sub.add_parser("verify", parents=[common], help="full identity suite over a z grid")
    sp = sub.add_parser("spectrum", parents=[common], help="low spectrum of h_S at one z")
    sp.add_argument("--z", type=float, required=True)
    sub.add_parser("special-cases", parents=[common], help="compare Theta(z) with the z = 0, +-1 metrics")
    return parser


_CONFIG_KEYS = ("omega", "alpha", "beta", "z_min", "z_max", "steps", "branch", "dim", "sector", "out", "format")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    file_values = load_config_file(args.config) if args.config else {}
    return build_config(file_values, {k: getattr(args, k) for k in _CONFIG_KEYS})


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        _params(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "spectrum":
            return cmd_spectrum(cfg, args.z)
        return cmd_special_cases(cfg)
    except (ConfigError, SwansonError, ValueError) as exc:
        if isinstance(exc, SwansonError) and not isinstance(exc, ValueError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAILED
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OutputError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
