"""Identity suite over a z grid, band-edge probes, exceptional-point scan, transition elements."""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import linalg as la
from . import operators as ops
from .closed_forms import (
    Branch,
    MetricChoice,
    OscillatorParams,
    classical,
    is_valid,
    master_residual,
    metric_scalars,
    singular_band,
    special_case_epsilon,
    special_case_z,
)
from .errors import DimensionError, InvalidParametersError, MatrixOverflowError

#: largest finite double, reported in place of an overflowed metric entry
OVERFLOW_SENTINEL = sys.float_info.max
MIN_SUITE_DIM = 8
DEFAULT_DIM = 64
DEFAULT_STEPS = 41

TOLERANCES = {
    "quasi_hermiticity": 1e-8,
    "hs_hermiticity": 1e-8,
    "hs_closed_form": 1e-8,
    "spectrum": 1e-8,
    "observable_O": 1e-8,
    "observable_O_hermiticity": 1e-8,
    "mu_nu": 1e-12,
    "master_equation": 1e-10,
    "classical_energy": 1e-12,
    "hermitian_coefficients": 1e-8,
    "xp_closed_form": 1e-8,
    "similarity_roundtrip": 1e-9,
    "ground_state_width": 1e-7,
    "special_case_metric": 1e-9,
    "O_number": 1e-9,
    "x_identity": 1e-10,
    "p_identity": 1e-10,
}


def default_grid(steps: int = DEFAULT_STEPS, z_min: float = -1.0, z_max: float = 1.0) -> list[float]:
    """Uniform grid, endpoints included; a single step gives z_min."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps == 1:
        return [float(z_min)]
    return [float(z) for z in np.linspace(z_min, z_max, steps)]


@dataclass(frozen=True)
class CheckEntry:
    check: str
    z: float
    branch: str
    residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class SkippedPoint:
    z: float
    branch: str
    reason: str


@dataclass
class VerificationReport:
    params: OscillatorParams
    dim: int
    sector: int
    grid: list[float]
    entries: list[CheckEntry] = field(default_factory=list)
    skipped: list[SkippedPoint] = field(default_factory=list)

    @property
    def n_passed(self) -> int:
        return sum(e.passed for e in self.entries)

    @property
    def n_failed(self) -> int:
        return len(self.entries) - self.n_passed

    @property
    def all_passed(self) -> bool:
        return self.n_failed == 0

    @property
    def summary(self) -> dict:
        return {"passed": self.n_passed, "failed": self.n_failed, "skipped": len(self.skipped)}

    def worst(self) -> dict[str, CheckEntry]:
        """Largest residual-to-tolerance ratio per check name, in first-seen order."""
        out: dict[str, CheckEntry] = {}
        for e in self.entries:
            cur = out.get(e.check)
            if cur is None or _ratio(e) > _ratio(cur):
                out[e.check] = e
        return out

    def by_check(self, name: str) -> list[CheckEntry]:
        return [e for e in self.entries if e.check == name]

    def summary_text(self) -> str:
        p = self.params
        lines = [
            f"omega={p.omega:g} alpha={p.alpha:g} beta={p.beta:g} dim={self.dim} sector={self.sector}",
            f"grid points: {len(self.grid)}  passed: {self.n_passed}  failed: {self.n_failed}  skipped points: {len(self.skipped)}",
        ]
        for name, e in self.worst().items():
            flag = "ok  " if all(x.passed for x in self.by_check(name)) else "FAIL"
            lines.append(f"  {flag} {name:<26} worst {e.residual:.3e} (tol {e.tolerance:.0e}) at z={e.z:g} {e.branch}")
        if self.grid and len(self.skipped) == len(self.grid):
            lines.append("warning: every grid point was skipped; nothing was verified")
        return "\n".join(lines)

    # serialisation ------------------------------------------------------

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["check", "z", "branch", "residual", "tolerance", "passed", "note"])
        for e in self.entries:
            w.writerow([e.check, fmt(e.z), e.branch, fmt(e.residual), fmt(e.tolerance), _bool(e.passed), ""])
        for s in self.skipped:
            w.writerow(["skipped", fmt(s.z), s.branch, "", "", "", s.reason])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "params": asdict(self.params),
            "dim": self.dim,
            "sector": self.sector,
            "grid": self.grid,
            "summary": self.summary,
            "entries": [asdict(e) for e in self.entries],
            "skipped": [asdict(s) for s in self.skipped],
        }
        return json.dumps(_json_safe(doc), sort_keys=True, indent=2) + "\n"


def _ratio(e: CheckEntry) -> float:
    return math.inf if not math.isfinite(e.residual) else e.residual / e.tolerance


def fmt(x: float) -> str:
    """17 significant digits, the shortest form that round-trips any double."""
    return format(float(x), ".17g")


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


# --------------------------------------------------------------------------
# per-point checks
# --------------------------------------------------------------------------

def _sector_norm(m: np.ndarray, k: int) -> float:
    return la.frobenius_norm(m[:k, :k])


def sector_diff(a: np.ndarray, b: np.ndarray, k: int) -> float:
    """||(a - b)_k|| / max(||a_k||, ||b_k||, 1)."""
    diff = _sector_norm(a - b, k)
    return diff / max(_sector_norm(a, k), _sector_norm(b, k), 1.0)


def quasi_hermiticity_residual(o: ops.OperatorSet, k: int | None = None) -> float:
    """||(Theta H - H^dag Theta)_k|| / (||Theta|| ||H||), full-matrix norms, floor 1."""
    k = o.sector if k is None else k
    lhs = o.Theta @ o.H
    rhs = o.H.conj().T @ o.Theta
    return _sector_norm(lhs - rhs, k) / max(la.frobenius_norm(o.Theta) * la.frobenius_norm(o.H), 1.0)


def hs_closed_form_residual(o: ops.OperatorSet, k: int | None = None) -> float:
    k = o.sector if k is None else k
    ref = ops.quadratic_form(o.scalars.mu, o.scalars.nu, o.params.omega, o.dim)
    return sector_diff(o.h_S, ref, k)


def observable_residual(o: ops.OperatorSet, k: int | None = None) -> float:
    k = o.sector if k is None else k
    ref = ops.observable_from(o.x_hat, o.p_hat, o.params.omega, o.choice)
    return sector_diff(o.O_combination, ref, k)


def hermiticity_sector(m: np.ndarray, k: int) -> float:
    block = m[:k, :k]
    return la.hermiticity_residual(block) / max(la.frobenius_norm(block), 1.0)


def spectrum_residual(h: np.ndarray, count: int, big_omega: float) -> tuple[float, np.ndarray]:
    """max_n |E_n - (n+1/2) Omega| / Omega over the lowest ``count`` resolved levels."""
    dec = ops.resolved_spectrum(h, count)
    levels = dec.eigenvalues
    if len(levels) < count:
        return math.inf, levels
    expected = (np.arange(count) + 0.5) * big_omega
    return float(np.max(np.abs(levels - expected)) / max(big_omega, 1e-300)), levels


def _point_checks(o: ops.OperatorSet) -> list[tuple[str, float]]:
    p, s, k, choice = o.params, o.scalars, o.sector, o.choice
    out: list[tuple[str, float]] = []
    out.append(("quasi_hermiticity", quasi_hermiticity_residual(o)))
    out.append(("hs_hermiticity", hermiticity_sector(o.h_S, k)))
    out.append(("hs_closed_form", hs_closed_form_residual(o)))

    count = max(k // 2, 1)
    spec_res, _ = spectrum_residual(o.h_S, count, p.big_omega)
    out.append(("spectrum", spec_res))

    out.append(("observable_O", observable_residual(o)))
    out.append(("observable_O_hermiticity", hermiticity_sector(o.O_combination, k)))

    om2 = p.big_omega_sq
    out.append(("mu_nu", abs(s.mu * s.nu - om2) / max(om2, 1e-300)))
    out.append(("master_equation", master_residual(p, s)))
    cq = classical(p, choice, 1.0)
    out.append(("classical_energy", abs(cq.e_classical - cq.e_from_mass) / max(abs(cq.e_classical), 1e-300)))

    U, V, W = ops.hermitian_coefficients(o.h_S, min(max(k, 3), o.dim))
    out.append(("hermitian_coefficients", max(abs(V - W.conjugate()), abs(U.imag)) / max(abs(U), 1.0)))

    x_cf, p_cf = ops.closed_form_xp(p, choice, o.dim)
    out.append(("xp_closed_form", max(sector_diff(o.x_transformed, x_cf, k), sector_diff(o.p_transformed, p_cf, k))))

    x = o.x_hat
    out.append(("similarity_roundtrip", sector_diff(o.S_inv @ (o.S @ x @ o.S_inv) @ o.S, x, k)))

    if p.big_omega > 0:
        width = ops.ground_state_width(o.h_S, p.omega)
        expected = ops.expected_ground_width(s.mu, p.big_omega)
        out.append(("ground_state_width", abs(width - expected) / abs(expected)))
    out.extend(_special_checks(o))
    return out


def special_case_label(choice: MetricChoice) -> str | None:
    z = choice.effective_z
    if z == 0.0:
        return "i"
    if z == 1.0:
        return "ii"
    if z == -1.0:
        return "iii"
    return None


def special_metric_residual(o: ops.OperatorSet, case: str, k: int | None = None) -> float:
    """Theta(z) against the printed special-case metric.

    At z = +-1 the general Theta carries an extra scalar exp(-eps) relative to
    the printed form; it is applied to the printed matrix before comparing.
    """
    k = o.sector if k is None else k
    ref = ops.special_case_metric(o.params, case, o.dim)
    if case != "i":
        ref = math.exp(-special_case_epsilon(o.params, case)) * ref
    return sector_diff(o.Theta, ref, k)


def _special_checks(o: ops.OperatorSet) -> list[tuple[str, float]]:
    case = special_case_label(o.choice)
    if case is None:
        return []
    k = o.sector
    out = [("special_case_metric", special_metric_residual(o, case))]
    if case == "i":
        w = o.params.omega
        ref = 2.0 * w * (la.number_op(o.dim) + 0.5 * la.identity(o.dim))
        out.append(("O_number", sector_diff(o.O_combination, ref, k)))
    elif case == "ii":
        out.append(("x_identity", _sector_norm(o.x_transformed - o.x_hat, k)))
    else:
        out.append(("p_identity", _sector_norm(o.p_transformed - o.p_hat, k)))
    return out


def run_suite(
    params: OscillatorParams,
    dim: int = DEFAULT_DIM,
    z_grid=None,
    branch: Branch | str = Branch.STANDARD,
    sector: int | None = None,
) -> VerificationReport:
    """Every identity check at every valid grid point; invalid points are skipped, never raised."""
    if dim < MIN_SUITE_DIM:
        raise DimensionError(f"suite needs dim >= {MIN_SUITE_DIM}, got {dim}")
    branch = Branch.parse(branch)
    grid = default_grid() if z_grid is None else [float(z) for z in z_grid]
    for z in grid:
        if not -1.0 <= z <= 1.0:
            raise ValueError(f"grid value {z!r} outside [-1, 1]")
    sector = ops.default_sector(dim) if sector is None else int(sector)
    report = VerificationReport(params=params, dim=dim, sector=sector, grid=grid)
    for z in grid:
        choice = MetricChoice(z, branch)
        if not is_valid(params, choice):
            lo, hi = singular_band(params).excluded(branch)
            report.skipped.append(SkippedPoint(z, branch.value, f"inside singular band [{fmt(lo)}, {fmt(hi)}]"))
            continue
        try:
            o = ops.build_operator_set(params, choice, dim, sector)
        except MatrixOverflowError as exc:
            report.skipped.append(SkippedPoint(z, branch.value, f"metric overflow: {exc}"))
            continue
        for name, residual in _point_checks(o):
            tol = TOLERANCES[name]
            residual = float(residual) if math.isfinite(residual) else math.inf
            report.entries.append(CheckEntry(name, z, branch.value, residual, tol, residual <= tol))
    return report


# --------------------------------------------------------------------------
# singular band edges
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeProbe:
    side: str                 # "z_minus" (approached from below) or "z_plus" (from above)
    offset: float
    z: float
    epsilon: float
    max_metric_entry: float   # OVERFLOW_SENTINEL once exp(2A) leaves the double range
    log_min_eigenvalue: float # log of Theta's smallest eigenvalue, 2 min eig(A)

    @property
    def min_eigenvalue(self) -> float:
        return math.exp(self.log_min_eigenvalue)


def _probe(params: OscillatorParams, side: str, offset: float, z: float, dim: int, branch: Branch) -> EdgeProbe:
    choice = MetricChoice(z, branch)
    s = metric_scalars(params, choice)
    A = ops._generator(s, dim)
    try:
        big = float(np.max(np.abs(la.matrix_exp(2.0 * A))))
    except MatrixOverflowError:
        big = OVERFLOW_SENTINEL
    log_min = float(ops.metric_log_spectrum(A)[0])
    return EdgeProbe(side, offset, z, s.epsilon, big, log_min)


def probe_band_edges(
    params: OscillatorParams,
    dim: int = DEFAULT_DIM,
    approach_offsets=(1e-2, 1e-3, 1e-4),
    branch: Branch | str = Branch.STANDARD,
) -> list[EdgeProbe]:
    """Metric data at z- - offset and z+ + offset (standard-branch coordinates, mirrored when asked)."""
    offsets = [float(o) for o in approach_offsets]
    if any(o <= 0 for o in offsets) or any(b >= a for a, b in zip(offsets, offsets[1:])):
        raise ValueError("offsets must be positive and strictly decreasing")
    branch = Branch.parse(branch)
    lo, hi = singular_band(params).excluded(branch)
    # in the mirrored branch the infinite edge is -z-, approached from above
    sign = 1.0 if branch is Branch.STANDARD else -1.0
    inf_edge, zero_edge = (lo, hi) if branch is Branch.STANDARD else (hi, lo)
    out = []
    for side, edge, direction in (("z_minus", inf_edge, -sign), ("z_plus", zero_edge, sign)):
        for off in offsets:
            z = edge + direction * off
            if not -1.0 <= z <= 1.0:
                raise ValueError(f"offset {off} leaves [-1, 1] from edge {edge:.6g}")
            out.append(_probe(params, side, off, z, dim, branch))
    return out


def strictly_increasing(xs) -> bool:
    return all(b > a for a, b in zip(xs, xs[1:]))


def strictly_decreasing(xs) -> bool:
    return all(b < a for a, b in zip(xs, xs[1:]))


# --------------------------------------------------------------------------
# exceptional point
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalRow:
    delta: float
    omega: float
    big_omega: float
    mean_spacing: float
    spacing_error: float  # max_n |(E_{n+1} - E_n) / Omega - 1| over the resolved sector


@dataclass(frozen=True)
class ExceptionalScan:
    alpha: float
    beta: float
    omega_ep: float
    z_minus: float
    z_plus: float
    dim: int
    z: float
    rows: list[ExceptionalRow]

    @property
    def band_gap(self) -> float:
        return self.z_plus - self.z_minus


def exceptional_point_scan(
    alpha: float,
    beta: float,
    dim: int = DEFAULT_DIM,
    deltas=(1e-2, 1e-3),
    z: float = 0.0,
    levels: int = 8,
) -> ExceptionalScan:
    """Band collapse at omega = 2 sqrt(alpha beta) and spacing of h_S just above it.

    The low eigenvectors of h_S get squeezed by sqrt(nu/mu) ~ 1/Omega, so the
    truncation needed to resolve the spacings grows as the point is approached.
    """
    if not alpha * beta > 0:
        raise InvalidParametersError(f"need alpha * beta > 0, got {alpha * beta!r}")
    if alpha == beta:
        raise InvalidParametersError("alpha == beta has no exceptional point with a band")
    ep = OscillatorParams.at_exceptional_point(alpha, beta)
    band = singular_band(ep)
    rows = []
    for d in deltas:
        p = OscillatorParams(ep.omega * (1.0 + d), alpha, beta)
        o = ops.hermitize(p, MetricChoice(z), dim)
        dec = ops.resolved_spectrum(o, levels)
        gaps = np.diff(dec.eigenvalues)
        if len(gaps) == 0:
            mean, err = math.nan, math.inf
        else:
            mean = float(np.mean(gaps))
            err = float(np.max(np.abs(gaps / p.big_omega - 1.0)))
        rows.append(ExceptionalRow(float(d), p.omega, p.big_omega, mean, err))
    return ExceptionalScan(alpha, beta, ep.omega, band.z_minus, band.z_plus, dim, z, rows)


# --------------------------------------------------------------------------
# transition elements
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TransitionTable:
    z: float
    branch: str
    elements: np.ndarray  # |<m| x |n>| between eigenstates of h_S(z)
    mu: float
    big_omega: float

    def predicted_neighbour_sq(self, n: int) -> float:
        """(n + 1) mu / (2 Omega): oscillator of mass 1/mu and frequency Omega."""
        return (n + 1) * self.mu / (2.0 * self.big_omega)

    def neighbour_errors(self, count: int | None = None) -> np.ndarray:
        count = self.elements.shape[0] - 1 if count is None else count
        return np.array([
            abs(self.elements[n, n + 1] ** 2 / self.predicted_neighbour_sq(n) - 1.0) for n in range(count)
        ])


def transition_elements(params: OscillatorParams, choice: MetricChoice, dim: int = DEFAULT_DIM, sector: int | None = None) -> TransitionTable:
    sector = ops.default_sector(dim) if sector is None else int(sector)
    s = metric_scalars(params, choice)
    h = ops.hermitize(params, choice, dim)
    dec = ops.resolved_spectrum(h, sector)
    v = dec.eigenvectors
    x = la.position_op(dim, params.omega)
    el = np.abs(v.conj().T @ x @ v)
    return TransitionTable(choice.z, choice.branch.value, el, s.mu, params.big_omega)
