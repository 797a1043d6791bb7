"""Scalar formulas for the metric family of the Swanson oscillator

    H = omega (a^dag a + 1/2) + alpha a^2 + beta a^dag^2.

The metric Theta(z) = S(z)^2 with S = exp(A), A = eps a^dag a + eta (a^2 + a^dag^2),
is parametrised by z in [-1, 1]; eps follows from the hermiticity condition and
eta = z eps / 2.  The mirrored branch is the same family evaluated at -z.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import (
    ExceptionalPointError,
    HermitianCaseError,
    InvalidParametersError,
    InvalidRegionError,
    NonPositiveFrequencyError,
)

#: |1 - z^2| below this routes through the printed z = +-1 special cases
ENDPOINT_TOL = 1e-9


@dataclass(frozen=True)
class OscillatorParams:
    omega: float
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("omega", "alpha", "beta"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidParametersError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if not self.omega > 0:
            raise NonPositiveFrequencyError(f"omega must be positive, got {self.omega!r}")
        if self.omega_sq_raw < -1e-14 * self.omega**2:
            raise InvalidParametersError(
                f"complex spectrum: omega^2 - 4 alpha beta = {self.omega_sq_raw:.3e} < 0"
            )

    @property
    def omega_sq_raw(self) -> float:
        return self.omega**2 - 4.0 * self.alpha * self.beta

    @property
    def big_omega_sq(self) -> float:
        """Omega^2 = omega^2 - 4 alpha beta, rounding below zero clamped."""
        return max(self.omega_sq_raw, 0.0)

    @property
    def big_omega(self) -> float:
        return math.sqrt(self.big_omega_sq)

    @property
    def hermitian(self) -> bool:
        return self.alpha == self.beta

    @property
    def exceptional(self) -> bool:
        return self.big_omega_sq == 0.0

    @classmethod
    def at_exceptional_point(cls, alpha: float, beta: float) -> OscillatorParams:
        if not alpha * beta > 0:
            raise InvalidParametersError(f"need alpha * beta > 0, got {alpha * beta!r}")
        return cls(2.0 * math.sqrt(alpha * beta), alpha, beta)


DEMO_PARAMS = OscillatorParams(1.0, 0.5, 0.25)


class Branch(enum.Enum):
    STANDARD = "standard"
    MIRRORED = "mirrored"

    @classmethod
    def parse(cls, value) -> Branch:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"branch must be 'standard' or 'mirrored', got {value!r}") from None


@dataclass(frozen=True)
class MetricChoice:
    z: float
    branch: Branch = Branch.STANDARD

    def __post_init__(self):
        z = float(self.z)
        if not -1.0 <= z <= 1.0:
            raise ValueError(f"metric parameter z must lie in [-1, 1], got {z!r}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "branch", Branch.parse(self.branch))

    @property
    def effective_z(self) -> float:
        return self.z if self.branch is Branch.STANDARD else -self.z


@dataclass(frozen=True)
class SingularBand:
    """Roots z- <= z+ of the standard-branch band; the metric is undefined on [z-, z+]."""

    z_minus: float
    z_plus: float

    def excluded(self, branch: Branch = Branch.STANDARD) -> tuple[float, float]:
        if Branch.parse(branch) is Branch.STANDARD:
            return self.z_minus, self.z_plus
        return -self.z_plus, -self.z_minus

    def contains(self, z: float, branch: Branch = Branch.STANDARD) -> bool:
        lo, hi = self.excluded(branch)
        return lo <= z <= hi


@dataclass(frozen=True)
class MetricScalars:
    epsilon: float
    eta: float
    theta_sq: float
    mu: float
    nu: float
    valid: bool = True


@dataclass(frozen=True)
class ClassicalQuantities:
    mass: float
    e_classical: float
    amplitude: float
    e_from_mass: float  # A^2 Omega^2 / (2 mu), the same energy written through the mass


def singular_band(params: OscillatorParams) -> SingularBand:
    """z+- = ((alpha+beta) omega +- (alpha-beta) Omega) / (omega^2 + (alpha-beta)^2)."""
    if params.hermitian:
        raise HermitianCaseError("alpha == beta: every z is admissible, no singular band")
    w, s, d = params.omega, params.alpha + params.beta, params.alpha - params.beta
    denom = w * w + d * d
    centre = s * w / denom
    half = abs(d) * params.big_omega / denom
    return SingularBand(centre - half, centre + half)


def arctanh_argument(params: OscillatorParams, z: float) -> float:
    """(alpha - beta) sqrt(1 - z^2) / (alpha + beta - z omega); +-inf on a zero denominator."""
    d = params.alpha - params.beta
    root = math.sqrt(max(1.0 - z * z, 0.0))
    den = params.alpha + params.beta - z * params.omega
    if den == 0.0:
        return 0.0 if d * root == 0.0 else math.copysign(math.inf, d * root)
    return d * root / den


def _valid_at(params: OscillatorParams, z: float) -> bool:
    if params.hermitian:
        return True
    d = params.alpha - params.beta
    den = params.alpha + params.beta - z * params.omega
    if params.exceptional:
        # the band is a single point where |arg| touches 1; rounding can land either side
        z0 = (params.alpha + params.beta) * params.omega / (params.omega**2 + d * d)
        if abs(z - z0) <= 1e-12:
            return False
    # |d sqrt(1-z^2) / den| < 1 without dividing; boundary counts as invalid
    return d * d * max(1.0 - z * z, 0.0) < den * den


def is_valid(params: OscillatorParams, choice: MetricChoice) -> bool:
    return _valid_at(params, choice.effective_z)


def fock_representable(params: OscillatorParams, choice: MetricChoice) -> bool:
    """Whether S and S^-1 both map every number state into the Hilbert space.

    Normal ordering exp(A) gives S|0> ~ exp(g a^dag^2 / 2)|0>, normalisable iff
    |g| < 1.  For S and S^-1 together this reduces to
    |alpha + beta - z omega| > |alpha - beta|, which is the validity condition with
    the sqrt(1 - z^2) factor dropped, so it is strictly narrower for |z| < 1.
    Outside it, no finite truncation converges to S H S^-1.
    """
    if params.hermitian:
        return True
    z = choice.effective_z
    return is_valid(params, choice) and abs(params.alpha + params.beta - z * params.omega) > abs(
        params.alpha - params.beta
    )


def normal_order_coefficient(epsilon: float, eta: float) -> float:
    """g in exp(A) = e^{-eps/2} exp(g a^dag^2/2) c^{-(N+1/2)} exp(g a^2/2), c = cosh th - eps sinhc th."""
    theta_sq = epsilon * epsilon - 4.0 * eta * eta
    ch, shc = cosh_sinhc(theta_sq)
    c = ch - epsilon * shc
    return 2.0 * eta * shc / c


def cosh_sinhc(theta_sq: float) -> tuple[float, float]:
    """(cosh th, sinh th / th) as functions of th^2; series below |th| = 1e-4."""
    if theta_sq < 0:
        raise ValueError(f"theta^2 must be >= 0 for a real metric, got {theta_sq!r}")
    if theta_sq < 1e-8:
        return 1.0 + theta_sq / 2.0 + theta_sq**2 / 24.0, 1.0 + theta_sq / 6.0 + theta_sq**2 / 120.0
    th = math.sqrt(theta_sq)
    return math.cosh(th), math.sinh(th) / th


def _check_valid(params: OscillatorParams, choice: MetricChoice) -> None:
    if is_valid(params, choice):
        return
    z = choice.effective_z
    if params.exceptional:
        raise ExceptionalPointError(f"Omega = 0 and z = {choice.z!r} ({choice.branch.value}) is on the collapsed band")
    band = singular_band(params)
    lo, hi = band.excluded(choice.branch)
    raise InvalidRegionError(
        f"z = {choice.z!r} ({choice.branch.value}) lies in the singular band [{lo:.6g}, {hi:.6g}]"
        f" (arctanh argument {arctanh_argument(params, z):.6g})"
    )


def _endpoint(z: float) -> bool:
    return abs(1.0 - z * z) < ENDPOINT_TOL


def _epsilon(params: OscillatorParams, z: float) -> float:
    w, s, d = params.omega, params.alpha + params.beta, params.alpha - params.beta
    if d == 0.0:
        return 0.0
    if _endpoint(z):
        if z > 0:
            return -d / (2.0 * (w - s))
        return d / (2.0 * (w + s))
    root = math.sqrt(1.0 - z * z)
    return math.atanh(d * root / (s - z * w)) / (2.0 * root)


def _mu_nu(params: OscillatorParams, z: float) -> tuple[float, float]:
    w, s, d = params.omega, params.alpha + params.beta, params.alpha - params.beta
    om2 = params.big_omega_sq
    if _endpoint(z):
        if z > 0:
            return (w - s) / w, w * om2 / (w - s)
        return om2 / (w * (w + s)), w * (w + s)
    den = s - z * w
    one_minus = 1.0 - z * z
    # (s - z w) sqrt(1 - (1-z^2) d^2 / (s - z w)^2), written without the division
    r = math.copysign(math.sqrt(max(den * den - one_minus * d * d, 0.0)), den)
    lead = w - z * s
    minus, plus = lead - r, lead + r
    # minus * plus = (1 - z^2) Omega^2: evaluate the larger factor directly and
    # recover the other through the product to avoid cancellation
    if abs(minus) >= abs(plus):
        mu = minus / ((1.0 + z) * w)
        nu = w * (1.0 + z) * om2 / minus
    else:
        nu = w * plus / (1.0 - z)
        mu = (1.0 - z) * om2 / (w * plus)
    return mu, nu


def metric_scalars(params: OscillatorParams, choice: MetricChoice, *, strict: bool = True) -> MetricScalars:
    """epsilon, eta, theta^2, mu, nu at the branch-adjusted z.

    With ``strict=False`` an invalid z returns NaN fields and ``valid=False``
    instead of raising.
    """
    if not is_valid(params, choice):
        if strict:
            _check_valid(params, choice)
        nan = math.nan
        return MetricScalars(nan, nan, nan, nan, nan, valid=False)
    z = choice.effective_z
    eps = _epsilon(params, z)
    mu, nu = _mu_nu(params, z)
    return MetricScalars(
        epsilon=eps,
        eta=z * eps / 2.0,
        theta_sq=eps * eps * (1.0 - z * z),
        mu=mu,
        nu=nu,
    )


def mu_nu(params: OscillatorParams, choice: MetricChoice) -> tuple[float, float]:
    _check_valid(params, choice)
    return _mu_nu(params, choice.effective_z)


def master_residual(params: OscillatorParams, scalars: MetricScalars) -> float:
    """|tanh(2 th)/th - (alpha - beta) / ((alpha + beta) eps - 2 omega eta)|, evaluated cross-multiplied."""
    w, s, d = params.omega, params.alpha + params.beta, params.alpha - params.beta
    th = math.sqrt(scalars.theta_sq)
    lhs_num = math.tanh(2.0 * th) if th > 0 else 0.0
    # tanh(2 th)/th -> 2 as th -> 0
    ratio = lhs_num / th if th > 1e-8 else 2.0 - 8.0 * scalars.theta_sq / 3.0
    den = s * scalars.epsilon - 2.0 * w * scalars.eta
    return abs(ratio * den - d) / max(abs(d), 1.0)


def classical(params: OscillatorParams, choice: MetricChoice, amplitude: float) -> ClassicalQuantities:
    if not amplitude > 0:
        raise ValueError(f"amplitude must be positive, got {amplitude!r}")
    mu, nu = mu_nu(params, choice)
    return ClassicalQuantities(
        mass=1.0 / mu,
        e_classical=nu * amplitude**2 / 2.0,
        amplitude=float(amplitude),
        e_from_mass=amplitude**2 * params.big_omega_sq / (2.0 * mu),
    )


# printed special cases, used as independent cross-checks ---------------------

def special_case_epsilon(params: OscillatorParams, case: str) -> float:
    """epsilon for case 'i' (z=0), 'ii' (x-metric) and 'iii' (p-metric)."""
    w, a, b = params.omega, params.alpha, params.beta
    if case not in ("i", "ii", "iii"):
        raise ValueError(f"unknown special case {case!r}")
    if a == b:
        return 0.0
    if case == "i":
        return 0.25 * math.log(a / b)
    if case == "ii":
        return -(a - b) / (2.0 * (w - a - b))
    if case == "iii":
        return (a - b) / (2.0 * (w + a + b))
    raise ValueError(f"unknown special case {case!r}")


def special_case_mu_nu(params: OscillatorParams, case: str) -> tuple[float, float]:
    w, a, b = params.omega, params.alpha, params.beta
    om2 = params.big_omega_sq
    if case == "i":
        g = 2.0 * math.sqrt(a * b)
        return (w - g) / w, w * (w + g)
    if case == "ii":
        return (w - a - b) / w, w * om2 / (w - a - b)
    if case == "iii":
        return om2 / (w * (w + a + b)), w * (w + a + b)
    raise ValueError(f"unknown special case {case!r}")


def special_case_z(case: str, branch: Branch = Branch.STANDARD) -> float:
    """Where each printed case sits; the mirrored branch swaps (ii) and (iii)."""
    z = {"i": 0.0, "ii": 1.0, "iii": -1.0}[case]
    return z if Branch.parse(branch) is Branch.STANDARD else -z
