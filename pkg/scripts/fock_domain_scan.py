"""Where does the truncated similarity transform converge?

For each z the Fock representability margin |alpha + beta - z omega| - |alpha - beta|
is printed next to the sector residual of S H S^-1 against the closed form
at several truncations. Points with a negative margin do not converge.
"""
import argparse
from dataclasses import dataclass

from swanson_metric import operators as ops
from swanson_metric import verification as ver
from swanson_metric.closed_forms import MetricChoice, OscillatorParams, fock_representable, is_valid
from swanson_metric.errors import MatrixOverflowError


@dataclass(frozen=True)
class ScanConfig:
    omega: float = 1.0
    alpha: float = 0.5
    beta: float = 0.25
    steps: int = 21
    sector: int = 8
    dims: tuple = (32, 64, 128)


def main(cfg: ScanConfig) -> None:
    p = OscillatorParams(cfg.omega, cfg.alpha, cfg.beta)
    print("z,margin,representable," + ",".join(f"hs_residual_dim{d}" for d in cfg.dims))
    for z in ver.default_grid(cfg.steps):
        choice = MetricChoice(z)
        if not is_valid(p, choice):
            print(f"{z:.4f},,band,")
            continue
        margin = abs(p.alpha + p.beta - z * p.omega) - abs(p.alpha - p.beta)
        res = []
        for d in cfg.dims:
            try:
                o = ops.build_operator_set(p, choice, d, cfg.sector)
                res.append(f"{ver.hs_closed_form_residual(o):.3e}")
            except MatrixOverflowError:
                res.append("overflow")
        print(f"{z:.4f},{margin:+.4f},{fock_representable(p, choice)}," + ",".join(res))


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--omega", type=float, default=1.0)
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--beta", type=float, default=0.25)
    ap.add_argument("--steps", type=int, default=21)
    ap.add_argument("--sector", type=int, default=8)
    ap.add_argument("--dims", type=int, nargs="+", default=[32, 64, 128])
    a = ap.parse_args()
    main(ScanConfig(a.omega, a.alpha, a.beta, a.steps, a.sector, tuple(a.dims)))
