"""Closed-form scalars and the full identity suite over the demo grid.

    python3 scripts/demo_sweep.py --dim 64 --out-dir runs/demo
"""
import argparse
import pathlib
from dataclasses import dataclass

from swanson_metric import cli
from swanson_metric import verification as ver
from swanson_metric.closed_forms import Branch, OscillatorParams
from swanson_metric.config import RunConfig


@dataclass(frozen=True)
class SweepConfig:
    omega: float = 1.0
    alpha: float = 0.5
    beta: float = 0.25
    steps: int = 41
    dim: int = 64
    out_dir: str = "runs/demo"


def main(cfg: SweepConfig) -> None:
    out = pathlib.Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = OscillatorParams(cfg.omega, cfg.alpha, cfg.beta)
    grid = ver.default_grid(cfg.steps)
    for branch in Branch:
        run = RunConfig(omega=cfg.omega, alpha=cfg.alpha, beta=cfg.beta, steps=cfg.steps,
                        branch=branch, dim=cfg.dim)
        rows = cli.sweep_rows(run)
        (out / f"sweep_{branch.value}.csv").write_text(
            cli.render_table(cli.SWEEP_COLUMNS, rows, "csv"), newline="")
        zs = grid if branch is Branch.STANDARD else [-z for z in grid]
        report = ver.run_suite(params, cfg.dim, zs, branch)
        (out / f"verify_{branch.value}.csv").write_text(report.to_csv(), newline="")
        print(f"[{branch.value}]")
        print(report.summary_text())
        failing = sorted({e.z for e in report.entries if not e.passed})
        if failing:
            print("  failing z:", ", ".join(f"{z:g}" for z in failing))


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    for name, default in SweepConfig.__dataclass_fields__.items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default.default), default=default.default)
    main(SweepConfig(**vars(ap.parse_args())))
