"""Dense complex linear algebra on the truncated Fock space {|0>, ..., |N-1>}.

Matrices are plain ``numpy`` complex arrays; ``FockMatrix`` is only an alias
used in signatures.  Everything here is a pure function of its arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionError,
    MatrixOverflowError,
    NoConvergenceError,
    NonPositiveFrequencyError,
    NotHermitianError,
)

FockMatrix = np.ndarray

#: scaled 1-norm targeted before the Taylor kernel is applied
EXPM_SCALED_NORM = 0.5
#: 0.5**19 / 19! ~ 1.6e-23, far below double rounding
EXPM_TAYLOR_ORDER = 18


def as_fock(m, *, name: str = "matrix") -> FockMatrix:
    """Validate and coerce ``m`` to a square complex matrix of dim >= 2."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise DimensionError(f"{name} must have dim >= 2, got {arr.shape[0]}")
    return arr


def _check_dim(dim: int) -> int:
    if int(dim) != dim or dim < 2:
        raise DimensionError(f"truncation dim must be an integer >= 2, got {dim!r}")
    return int(dim)


def _same_dim(*ms: FockMatrix) -> None:
    dims = {m.shape for m in ms}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")


# --------------------------------------------------------------------------
# ladder algebra
# --------------------------------------------------------------------------

def ladder_a(dim: int) -> FockMatrix:
    """Annihilation operator: a[n-1, n] = sqrt(n)."""
    dim = _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(np.complex128)


def ladder_adag(dim: int) -> FockMatrix:
    return adjoint(ladder_a(dim))


def number_op(dim: int) -> FockMatrix:
    dim = _check_dim(dim)
    return np.diag(np.arange(dim, dtype=float)).astype(np.complex128)


def identity(dim: int) -> FockMatrix:
    return np.eye(_check_dim(dim), dtype=np.complex128)


def _check_omega(omega: float) -> float:
    omega = float(omega)
    if not omega > 0 or not math.isfinite(omega):
        raise NonPositiveFrequencyError(f"omega must be positive and finite, got {omega!r}")
    return omega


def position_op(dim: int, omega: float) -> FockMatrix:
    """x = (a + a^dag) / sqrt(2 omega)."""
    omega = _check_omega(omega)
    a = ladder_a(dim)
    return (a + a.T) / math.sqrt(2.0 * omega)


def momentum_op(dim: int, omega: float) -> FockMatrix:
    """p = i sqrt(omega / 2) (a^dag - a)."""
    omega = _check_omega(omega)
    a = ladder_a(dim)
    return 1j * math.sqrt(omega / 2.0) * (a.T - a)


def position_sq(dim: int, omega: float) -> FockMatrix:
    """Projection of x^2 itself: unlike x @ x it is exact in the last row as well."""
    omega = _check_omega(omega)
    a = ladder_a(dim)
    return (a @ a + a.T @ a.T + 2.0 * number_op(dim) + identity(dim)) / (2.0 * omega)


def momentum_sq(dim: int, omega: float) -> FockMatrix:
    """Projection of p^2, exact in every entry."""
    omega = _check_omega(omega)
    a = ladder_a(dim)
    return -0.5 * omega * (a @ a + a.T @ a.T - 2.0 * number_op(dim) - identity(dim))


# --------------------------------------------------------------------------
# algebra helpers
# --------------------------------------------------------------------------

def adjoint(m: FockMatrix) -> FockMatrix:
    return as_fock(m).conj().T


def mul(*ms: FockMatrix) -> FockMatrix:
    """Matrix product of one or more operands of equal dimension."""
    if not ms:
        raise ValueError("mul needs at least one operand")
    ms = tuple(as_fock(m) for m in ms)
    _same_dim(*ms)
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def add(a: FockMatrix, b: FockMatrix) -> FockMatrix:
    a, b = as_fock(a), as_fock(b)
    _same_dim(a, b)
    return a + b


def sub(a: FockMatrix, b: FockMatrix) -> FockMatrix:
    a, b = as_fock(a), as_fock(b)
    _same_dim(a, b)
    return a - b


def scale(c: complex, m: FockMatrix) -> FockMatrix:
    return complex(c) * as_fock(m)


def commutator(a: FockMatrix, b: FockMatrix) -> FockMatrix:
    a, b = as_fock(a), as_fock(b)
    _same_dim(a, b)
    return a @ b - b @ a


def frobenius_norm(m: FockMatrix) -> float:
    return float(np.linalg.norm(np.asarray(m)))


def hermiticity_residual(m: FockMatrix) -> float:
    """||m - m^dag||_F."""
    m = np.asarray(m)
    return frobenius_norm(m - m.conj().T)


def project_sector(m: FockMatrix, k: int) -> FockMatrix:
    """Top-left k x k block (the states |0>..|k-1>)."""
    m = np.asarray(m)
    if int(k) != k or not 1 <= k <= m.shape[0]:
        raise DimensionError(f"sector size must satisfy 1 <= k <= {m.shape[0]}, got {k!r}")
    return m[:k, :k]


# --------------------------------------------------------------------------
# matrix exponential
# --------------------------------------------------------------------------

def matrix_exp(m: FockMatrix) -> FockMatrix:
    """exp(m) by scaling and squaring around a fixed-order Taylor kernel.

    The squaring count s is the smallest with ||m||_1 / 2**s <= 0.5.
    Raises MatrixOverflowError if an intermediate leaves the double range.
    """
    m = as_fock(m)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix_exp: input has non-finite entries")
    dim = m.shape[0]
    eye = np.eye(dim, dtype=np.complex128)
    norm1 = float(np.max(np.sum(np.abs(m), axis=0)))
    squarings = 0
    if norm1 > EXPM_SCALED_NORM:
        squarings = int(math.ceil(math.log2(norm1 / EXPM_SCALED_NORM)))
    x = m / (2.0 ** squarings)

    result = eye
    for k in range(EXPM_TAYLOR_ORDER, 0, -1):
        result = eye + (x @ result) / k
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(squarings):
            result = result @ result
            if not np.all(np.isfinite(result)):
                raise MatrixOverflowError(
                    f"matrix_exp overflowed (||m||_1 = {norm1:.3g}, dim = {dim})"
                )
    return result


# --------------------------------------------------------------------------
# Hermitian eigensolver: cyclic Jacobi, round-robin ordering
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray   # ascending, real
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]

    def __len__(self) -> int:
        return len(self.eigenvalues)


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """n-1 rounds of disjoint (p, q) pairs covering every pair once (circle method)."""
    m = n + (n % 2)
    order = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = order[i], order[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        order = [order[0], order[-1], *order[1:-1]]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return frobenius_norm(off)


def hermitian_eigen(m: FockMatrix, *, tol: float = 1e-13, max_sweeps: int = 100) -> SpectralDecomposition:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each round annihilates n/2 disjoint (p, q) pairs at once.  Converged when the
    off-diagonal Frobenius mass drops below ``tol * ||m||_F``.
    """
    m = as_fock(m)
    scale_ = frobenius_norm(m)
    if hermiticity_residual(m) > 1e-10 * scale_:
        raise NotHermitianError(
            f"hermiticity residual {hermiticity_residual(m):.3e} exceeds 1e-10 * ||m|| = {1e-10 * scale_:.3e}"
        )
    n = m.shape[0]
    a = 0.5 * (m + m.conj().T)
    if not np.any(a.imag):
        # real symmetric input (the common case here): same rotations, half the flops
        a = a.real.copy()
    v = np.eye(n, dtype=a.dtype)
    rounds = _round_robin(n)

    for _ in range(max_sweeps):
        if _off_norm(a) <= tol * scale_:
            break
        for p, q in rounds:
            app = a[p, p].real
            aqq = a[q, q].real
            apq = a[p, q]
            mag = np.abs(apq)
            active = mag > 1e-300
            safe = np.where(active, mag, 1.0)
            u = np.where(active, apq / safe, 1.0)
            tau = (aqq - app) / (2.0 * safe)
            sgn = np.where(tau >= 0, 1.0, -1.0)
            t = np.where(active, sgn / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # A <- A V with V = diag(1, conj(u)) . [[c, s], [-s, c]] on each plane
            vpq = -s * np.conj(u)
            vqq = c * np.conj(u)
            ap, aq = a[:, p], a[:, q]
            a[:, p] = ap * c + aq * vpq
            a[:, q] = ap * s + aq * vqq
            ap, aq = a[p, :], a[q, :]
            a[p, :] = c[:, None] * ap + np.conj(vpq)[:, None] * aq
            a[q, :] = s[:, None] * ap + np.conj(vqq)[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p], v[:, q]
            v[:, p] = vp * c + vq * vpq
            v[:, q] = vp * s + vq * vqq
    else:
        if _off_norm(a) > tol * scale_:
            raise NoConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    lam = np.diagonal(a).real.copy()
    order = np.argsort(lam, kind="stable")
    return SpectralDecomposition(eigenvalues=lam[order], eigenvectors=v[:, order].astype(np.complex128))
