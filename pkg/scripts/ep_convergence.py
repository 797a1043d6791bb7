"""Level spacing just above the exceptional point versus truncation.

Near omega = 2 sqrt(alpha beta) the low eigenstates of h_S are squeezed by
roughly 1/Omega, so the basis size needed for a given accuracy grows quickly.
dim 256 takes several seconds.
"""
import argparse
from dataclasses import dataclass

from swanson_metric import verification as ver


@dataclass(frozen=True)
class EPConfig:
    alpha: float = 0.5
    beta: float = 0.125
    deltas: tuple = (1e-1, 1e-2, 1e-3)
    dims: tuple = (32, 64, 128, 256)
    z: float = 0.0


def main(cfg: EPConfig) -> None:
    print("dim,delta,Omega,mean_spacing,spacing_error")
    for d in cfg.dims:
        scan = ver.exceptional_point_scan(cfg.alpha, cfg.beta, dim=d, deltas=cfg.deltas, z=cfg.z)
        for r in scan.rows:
            print(f"{d},{r.delta:g},{r.big_omega:.6e},{r.mean_spacing:.6e},{r.spacing_error:.3e}")
    print(f"# band width at the exceptional point: {scan.band_gap:.3e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--beta", type=float, default=0.125)
    ap.add_argument("--deltas", type=float, nargs="+", default=[1e-1, 1e-2, 1e-3])
    ap.add_argument("--dims", type=int, nargs="+", default=[32, 64, 128, 256])
    ap.add_argument("--z", type=float, default=0.0)
    a = ap.parse_args()
    main(EPConfig(a.alpha, a.beta, tuple(a.deltas), tuple(a.dims), a.z))
