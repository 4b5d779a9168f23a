"""Recurrence laws read from Gram-matrix kernels, and sequence extension."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .config import DEFAULT, Tolerances
from .core import DomainError, SchurError, SchurSequence, defects, shift, tail_products
from .kernel import defect_vector, lower_matrix, null_vector, step_matrix


class LawError(SchurError):
    """A law and a prefix do not fit together: extension left the disk."""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


@dataclass(frozen=True, eq=False)
class RecurrenceLaw:
    """Order ``r``, kernel vector ``(p_r, ..., p_1, 1)`` and the derived coefficients."""

    order: int
    kernel_vector: np.ndarray
    coefficients: np.ndarray
    kernel_residual: float = 0.0
    separation: float = float("inf")

    @classmethod
    def from_coefficients(cls, coefficients, seq: SchurSequence) -> "RecurrenceLaw":
        """Law with prescribed coefficients; ``seq`` supplies ``D_1..D_r`` for the kernel vector."""
        coeffs = np.atleast_1d(np.asarray(coefficients, dtype=complex))
        r = coeffs.size
        scale = np.prod(defects(seq.padded(r + 1)[1:]))
        return cls(r, np.concatenate((-coeffs / scale, [1.0])), coeffs)


def coefficients_from_kernel(seq: SchurSequence, kernel_vector: np.ndarray) -> np.ndarray:
    """``-(prod_{k=1}^r D_k) * (p_r, ..., p_1) / p_0``."""
    r = kernel_vector.size - 1
    scale = np.prod(defects(seq.padded(r + 1)[1:]))
    return -scale * kernel_vector[:r] / kernel_vector[r]


def extract_law(seq: SchurSequence, r: int, tol: Tolerances = DEFAULT.tolerances) -> RecurrenceLaw:
    """Read the order-``r`` law from the kernel of the Gram matrix of order ``r + 1``."""
    seq.require_open("extract_law")
    if r < 1:
        raise DomainError("order must be at least 1")
    kern = null_vector(seq, r, tol.tol_kernel, tol.tol_sep)
    coeffs = coefficients_from_kernel(seq, kern.vector)
    sep = kern.next_smallest / max(abs(kern.smallest), np.finfo(float).tiny)
    return RecurrenceLaw(r, kern.vector, coeffs, kern.residual, sep)


def extend(
    prefix: SchurSequence,
    law: RecurrenceLaw,
    count: int,
    tol: Tolerances = DEFAULT.tolerances,
) -> SchurSequence:
    """Append ``count`` parameters generated by ``law``.

    With ``y_n = M_r(W^{n-r-1} g)^{-1} ... M_r(g)^{-1} lam`` (``y_r = lam``) the
    next parameter is
    ``prod_{s=1}^n D_s^{-1} * prod_{k=n-r+1}^n D_k^{-1} * eta_r(W^{n-r} g)^* y_n``.
    Each step costs one triangular solve on a vector, so no product of
    inverse matrices is ever formed.
    """
    r = law.order
    if prefix.N < r:
        raise DomainError(f"prefix needs at least {r + 1} parameters")
    prefix.require_open("extend")
    gam = list(prefix.params)
    d = list(defects(prefix.params))
    coeffs = np.asarray(law.coefficients, dtype=complex)

    # catch up from n = r to the end of the prefix
    vec = coeffs.copy()
    for n in range(r, prefix.N):
        vec = solve_triangular(step_matrix(SchurSequence(gam[n - r :]), r), vec, lower=True)

    for step in range(count):
        n = len(gam) - 1
        window = SchurSequence(gam[n - r :])
        inv_front = 1.0 / np.prod(d[1 : n + 1])
        inv_back = 1.0 / np.prod(d[n - r + 1 : n + 1])
        new = inv_front * inv_back * np.vdot(defect_vector(window, r), vec)
        if not abs(new) < 1 - tol.tol_margin:
            raise LawError(f"extension step {step} (index {n + 1}) produced |gamma| = {abs(new):.6g}", step)
        gam.append(complex(new))
        d.append(float(defects(np.array([new]))[0]))
        vec = solve_triangular(step_matrix(window, r), vec, lower=True)
    return SchurSequence(np.array(gam))


@dataclass(frozen=True, eq=False)
class Rank1Extension:
    sequence: SchurSequence
    bound_holds: bool
    worst_bound_ratio: float


def rank1_extend(gamma0: complex, gamma1: complex, lam: complex, count: int, slack: float = 1e-12) -> Rank1Extension:
    """``g_{m+1} = lam * g_m / prod_{j=1}^m (1 - |g_j|^2)`` for ``count`` steps.

    Also reports whether ``|g_{m+1}| <= |g_1| / (1 + m |g_1|)`` held throughout.
    """
    g1 = abs(gamma1)
    if gamma1 == 0:
        raise DomainError("gamma_1 must be nonzero")
    if not 0 < abs(lam) <= 1 - g1 + slack:
        raise DomainError(f"need 0 < |lambda| <= 1 - |gamma_1| = {1 - g1:.6g}, got {abs(lam):.6g}")
    gam = [complex(gamma0), complex(gamma1)]
    denom = 1.0
    worst = 0.0
    for m in range(1, count + 1):
        denom *= 1.0 - abs(gam[m]) ** 2
        nxt = lam * gam[m] / denom
        gam.append(nxt)
        worst = max(worst, abs(nxt) * (1 + m * g1) / g1)
    seq = SchurSequence.from_values(gam, terminated=False)
    return Rank1Extension(seq, worst <= 1 + slack, worst)


@dataclass(frozen=True)
class LawCheck:
    energy_residual: float
    recurrence_residual: float


def energy_gap(seq: SchurSequence, coefficients: np.ndarray) -> tuple[float, float]:
    """Both sides of ``prod_{k<=r}(1-|g_k|^2) - Pi_1^2 = lam^* (L^{-*} L^{-1} - I) lam``."""
    r = coefficients.size
    lhs = float(np.prod(1.0 - np.abs(seq.padded(r + 1)[1:]) ** 2)) - tail_products(seq)[1] ** 2
    solved = solve_triangular(lower_matrix(seq, r), coefficients, lower=True)
    rhs = float(np.vdot(solved, solved).real - np.vdot(coefficients, coefficients).real)
    return lhs, rhs


def verify_law(seq: SchurSequence, law: RecurrenceLaw) -> LawCheck:
    """Energy identity residual and the largest recurrence defect along ``seq``.

    The recurrence defect at ``n`` is ``(p, M(g) M(Wg) ... M(W^{n-r-1} g) eta(W^{n-r} g))``
    with matrices of size ``r + 1``; it is evaluated as ``eta^* u`` with
    ``u`` updated by ``u <- M(W^j g)^* u``.
    """
    seq.require_open("verify_law")
    r = law.order
    lhs, rhs = energy_gap(seq, np.asarray(law.coefficients, dtype=complex))
    energy = abs(lhs - rhs)
    u = np.asarray(law.kernel_vector, dtype=complex).copy()
    worst = 0.0
    # stop before the zero tail enters the window
    for j in range(max(seq.N - r, 0)):
        window = shift(seq, j)
        worst = max(worst, abs(np.vdot(defect_vector(window, r + 1), u)))
        u = step_matrix(window, r + 1).conj().T @ u
    return LawCheck(energy, worst)
