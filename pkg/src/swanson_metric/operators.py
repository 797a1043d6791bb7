"""Operators of the problem in the truncated Fock basis.

h_S is always formed as S H S^-1 from the matrix exponential of the generator;
the closed forms from :mod:`closed_forms` only enter as cross-checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .closed_forms import (
    MetricChoice,
    MetricScalars,
    OscillatorParams,
    _check_valid,
    cosh_sinhc,
    metric_scalars,
)
from .errors import DimensionError
from .linalg import FockMatrix

#: fraction of the basis next to the truncation edge treated as unresolved
EDGE_FRACTION = 0.25


def _check_dim(dim: int, minimum: int = 4) -> int:
    if int(dim) != dim or dim < minimum:
        raise DimensionError(f"dim must be an integer >= {minimum}, got {dim!r}")
    return int(dim)


def default_sector(dim: int) -> int:
    return max(dim // 4, 1)


def build_hamiltonian(params: OscillatorParams, dim: int) -> FockMatrix:
    """omega (a^dag a + 1/2) + alpha a^2 + beta a^dag^2."""
    dim = _check_dim(dim)
    a = la.ladder_a(dim)
    ad = a.T
    eye = la.identity(dim)
    return params.omega * (ad @ a + 0.5 * eye) + params.alpha * (a @ a) + params.beta * (ad @ ad)


def _generator(scalars: MetricScalars, dim: int) -> FockMatrix:
    a = la.ladder_a(dim)
    ad = a.T
    return scalars.epsilon * (ad @ a) + scalars.eta * (a @ a + ad @ ad)


def build_generator(params: OscillatorParams, choice: MetricChoice, dim: int) -> FockMatrix:
    """A = eps a^dag a + eta (a^2 + a^dag^2), real eta."""
    dim = _check_dim(dim)
    return _generator(metric_scalars(params, choice), dim)


def build_metric(params: OscillatorParams, choice: MetricChoice, dim: int) -> tuple[FockMatrix, FockMatrix, FockMatrix]:
    """(S, S^-1, Theta) with S = exp(A), S^-1 = exp(-A), Theta = S S."""
    A = build_generator(params, choice, dim)
    S = la.matrix_exp(A)
    S_inv = la.matrix_exp(-A)
    return S, S_inv, S @ S


def hermitize(params: OscillatorParams, choice: MetricChoice, dim: int) -> FockMatrix:
    S, S_inv, _ = build_metric(params, choice, dim)
    return S @ build_hamiltonian(params, dim) @ S_inv


def quadratic_form(mu: float, nu: float, omega: float, dim: int) -> FockMatrix:
    """(mu p^2 + nu x^2) / 2 from the truncated x and p."""
    x = la.position_op(dim, omega)
    p = la.momentum_op(dim, omega)
    return 0.5 * (mu * (p @ p) + nu * (x @ x))


def closed_form_hermitian(params: OscillatorParams, choice: MetricChoice, dim: int) -> FockMatrix:
    s = metric_scalars(params, choice)
    return quadratic_form(s.mu, s.nu, params.omega, _check_dim(dim))


def transformed_xp(params: OscillatorParams, choice: MetricChoice, dim: int) -> tuple[FockMatrix, FockMatrix]:
    """(S^-1 x S, S^-1 p S) by direct similarity; neither is Hermitian in general."""
    S, S_inv, _ = build_metric(params, choice, dim)
    x = la.position_op(dim, params.omega)
    p = la.momentum_op(dim, params.omega)
    return S_inv @ x @ S, S_inv @ p @ S


def closed_form_xp(params: OscillatorParams, choice: MetricChoice, dim: int) -> tuple[FockMatrix, FockMatrix]:
    """cosh th x + (i/omega)(eps - 2 eta) sinhc th p  and  cosh th p - i omega (eps + 2 eta) sinhc th x."""
    s = metric_scalars(params, choice)
    ch, shc = cosh_sinhc(s.theta_sq)
    w = params.omega
    x = la.position_op(dim, w)
    p = la.momentum_op(dim, w)
    x_t = ch * x + (1j / w) * (s.epsilon - 2.0 * s.eta) * shc * p
    p_t = ch * p - 1j * w * (s.epsilon + 2.0 * s.eta) * shc * x
    return x_t, p_t


def transformed_ladder(params: OscillatorParams, choice: MetricChoice, dim: int) -> tuple[FockMatrix, FockMatrix]:
    """(S a S^-1, S a^dag S^-1), the opposite orientation to :func:`transformed_xp`."""
    S, S_inv, _ = build_metric(params, choice, dim)
    a = la.ladder_a(dim)
    return S @ a @ S_inv, S @ a.T @ S_inv


def closed_form_ladder(params: OscillatorParams, choice: MetricChoice, dim: int) -> tuple[FockMatrix, FockMatrix]:
    """(cosh th - eps sinhc th) a - 2 eta sinhc th a^dag  and  (cosh th + eps sinhc th) a^dag + 2 eta sinhc th a."""
    s = metric_scalars(params, choice)
    ch, shc = cosh_sinhc(s.theta_sq)
    a = la.ladder_a(dim)
    ad = a.T
    return (ch - s.epsilon * shc) * a - 2.0 * s.eta * shc * ad, (ch + s.epsilon * shc) * ad + 2.0 * s.eta * shc * a


def observable_weights(choice: MetricChoice) -> tuple[float, float]:
    """(x^2 weight / omega^2, p^2 weight) = (1 + z, 1 - z) at the branch-adjusted z."""
    z = choice.effective_z
    return 1.0 + z, 1.0 - z


def observable_from(x: FockMatrix, p: FockMatrix, omega: float, choice: MetricChoice) -> FockMatrix:
    wx, wp = observable_weights(choice)
    return omega**2 * wx * (x @ x) + wp * (p @ p)


def observable_O(params: OscillatorParams, choice: MetricChoice, dim: int) -> FockMatrix:
    """omega^2 x^2 (1+z) + p^2 (1-z) built from the transformed x, p."""
    _check_valid(params, choice)
    x, p = transformed_xp(params, choice, dim)
    return observable_from(x, p, params.omega, choice)


def observable_O_hat(params: OscillatorParams, choice: MetricChoice, dim: int) -> FockMatrix:
    """The same combination of the untransformed (L2-Hermitian) x and p."""
    x = la.position_op(dim, params.omega)
    p = la.momentum_op(dim, params.omega)
    return observable_from(x, p, params.omega, choice)


def special_case_metric(params: OscillatorParams, case: str, dim: int) -> FockMatrix:
    """Theta as printed for the three special cases.

    (i)   (alpha/beta)^(N/2)
    (ii)  exp(-(alpha-beta)/(omega-alpha-beta) omega x^2)
    (iii) exp((alpha-beta)/(omega+alpha+beta) p^2 / omega)

    The general Theta(z) at z = +-1 equals (ii)/(iii) times the scalar exp(-eps):
    a^dag a +- (a^2 + a^dag^2)/2 = omega x^2 - 1/2 (resp. p^2/omega - 1/2).
    x^2 and p^2 are the projected squares, so the exponents agree with the
    truncated generator entry by entry.
    """
    dim = _check_dim(dim)
    w, a, b = params.omega, params.alpha, params.beta
    if case not in ("i", "ii", "iii"):
        raise ValueError(f"unknown special case {case!r}")
    if a == b:
        return la.identity(dim)
    if case == "i":
        n = np.arange(dim, dtype=float)
        return np.diag((a / b) ** (n / 2.0)).astype(np.complex128)
    if case == "ii":
        return la.matrix_exp(-(a - b) / (w - a - b) * w * la.position_sq(dim, w))
    if case == "iii":
        return la.matrix_exp((a - b) / (w + a + b) * la.momentum_sq(dim, w) / w)
    raise ValueError(f"unknown special case {case!r}")


def hermitian_coefficients(h: FockMatrix, sector: int) -> tuple[complex, complex, complex]:
    """Least-squares (U, V, W) with h ~ U (a^dag a + 1/2) + V a^2 + W a^dag^2 on the sector."""
    block = la.project_sector(h, sector)
    k = block.shape[0]
    if k < 3:
        raise DimensionError("need a sector of at least 3 states to separate U, V, W")
    n = np.arange(k, dtype=float)
    diag_basis = n + 0.5
    U = np.dot(np.diagonal(block), diag_basis) / np.dot(diag_basis, diag_basis)
    m = np.arange(k - 2, dtype=float)
    pair = np.sqrt((m + 1.0) * (m + 2.0))
    V = np.dot(np.diagonal(block, 2), pair) / np.dot(pair, pair)
    W = np.dot(np.diagonal(block, -2), pair) / np.dot(pair, pair)
    return complex(U), complex(V), complex(W)


def metric_log_spectrum(generator: FockMatrix) -> np.ndarray:
    """log of Theta's eigenvalues, 2 eig(A), ascending.

    Theta = exp(2A) spans far more than double precision near the band; its
    small eigenvalues are only accessible through the Hermitian generator.
    """
    return 2.0 * la.hermitian_eigen(generator).eigenvalues


def resolved_spectrum(h: FockMatrix, count: int | None = None, *, edge_fraction: float = EDGE_FRACTION) -> la.SpectralDecomposition:
    """Low eigenpairs of the Hermitian part of h, edge modes removed.

    Truncating a similarity transform corrupts the last rows and columns, which
    shows up as spurious eigenvectors living at the truncation edge.  Eigenvectors
    carrying more than half their weight in the last ``edge_fraction`` of the
    basis are discarded.
    """
    h = la.as_fock(h)
    dim = h.shape[0]
    herm = 0.5 * (h + h.conj().T)
    dec = la.hermitian_eigen(herm)
    edge = dim - max(int(round(dim * edge_fraction)), 1)
    edge_weight = np.sum(np.abs(dec.eigenvectors[edge:, :]) ** 2, axis=0)
    keep = np.flatnonzero(edge_weight < 0.5)
    if count is not None:
        keep = keep[:count]
    return la.SpectralDecomposition(dec.eigenvalues[keep], dec.eigenvectors[:, keep])


@dataclass(frozen=True)
class OperatorSet:
    """Every operator of one (params, choice, dim) build, computed once."""

    params: OscillatorParams
    choice: MetricChoice
    dim: int
    sector: int
    scalars: MetricScalars
    H: FockMatrix = field(repr=False)
    A: FockMatrix = field(repr=False)
    S: FockMatrix = field(repr=False)
    S_inv: FockMatrix = field(repr=False)
    Theta: FockMatrix = field(repr=False)
    h_S: FockMatrix = field(repr=False)
    x_transformed: FockMatrix = field(repr=False)
    p_transformed: FockMatrix = field(repr=False)
    O_combination: FockMatrix = field(repr=False)

    @property
    def x_hat(self) -> FockMatrix:
        return la.position_op(self.dim, self.params.omega)

    @property
    def p_hat(self) -> FockMatrix:
        return la.momentum_op(self.dim, self.params.omega)


def build_operator_set(params: OscillatorParams, choice: MetricChoice, dim: int, sector: int | None = None) -> OperatorSet:
    dim = _check_dim(dim)
    sector = default_sector(dim) if sector is None else int(sector)
    if not 1 <= sector <= dim:
        raise DimensionError(f"sector must lie in [1, {dim}], got {sector}")
    scalars = metric_scalars(params, choice)
    H = build_hamiltonian(params, dim)
    A = _generator(scalars, dim)
    S = la.matrix_exp(A)
    S_inv = la.matrix_exp(-A)
    x = la.position_op(dim, params.omega)
    p = la.momentum_op(dim, params.omega)
    x_t = S_inv @ x @ S
    p_t = S_inv @ p @ S
    return OperatorSet(
        params=params,
        choice=choice,
        dim=dim,
        sector=sector,
        scalars=scalars,
        H=H,
        A=A,
        S=S,
        S_inv=S_inv,
        Theta=S @ S,
        h_S=S @ H @ S_inv,
        x_transformed=x_t,
        p_transformed=p_t,
        O_combination=observable_from(x_t, p_t, params.omega, choice),
    )


def ground_state_width(h: FockMatrix, omega: float) -> float:
    """<psi0| x^2 |psi0> for the lowest resolved eigenvector of h."""
    dec = resolved_spectrum(h, 1)
    psi = dec.eigenvectors[:, 0]
    x = la.position_op(h.shape[0], omega)
    return float(np.real(np.vdot(psi, x @ (x @ psi))))


def expected_ground_width(mu: float, big_omega: float) -> float:
    """mu / (2 Omega): oscillator of mass 1/mu and frequency Omega."""
    return mu / (2.0 * big_omega)


def expected_level(n: int, big_omega: float) -> float:
    return (n + 0.5) * big_omega


__all__ = [
    "OperatorSet",
    "build_generator",
    "build_hamiltonian",
    "build_metric",
    "build_operator_set",
    "closed_form_hermitian",
    "closed_form_ladder",
    "closed_form_xp",
    "default_sector",
    "expected_ground_width",
    "expected_level",
    "ground_state_width",
    "hermitian_coefficients",
    "hermitize",
    "metric_log_spectrum",
    "observable_O",
    "observable_O_hat",
    "observable_from",
    "quadratic_form",
    "resolved_spectrum",
    "special_case_metric",
    "transformed_ladder",
    "transformed_xp",
]
