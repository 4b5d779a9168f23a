"""Finite sections of the unitary colligation model and related matrices.

Basis order for the two-block model: ``phi_1..phi_s`` (the part generated by
the input), then ``psi_1..psi_s`` (the coshift part), then the scalar
input/output coordinate last. Only the ``phi`` block is reachable from the
input coordinate, so truncating the ``psi`` block never changes Taylor
coefficients or moments.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import DomainError, SchurSequence, Status, defects, tail_products
from .kernel import null_vector


class Regime(enum.Enum):
    GAMMA_L2 = "gamma_l2"
    DIVERGENT = "divergent"
    FINITE_BLASCHKE = "finite_blaschke"


def _params_for(seq: SchurSequence, size: int) -> np.ndarray:
    return seq.padded(size + 1)


def main_block(gam: np.ndarray, size: int) -> np.ndarray:
    """Leading ``size x size`` block of the matrix generated by ``phi_1, phi_2, ...``.

    Entry ``(n, k)`` (1-based) is ``-conj(g_{n-1}) g_k prod_{j=n}^{k-1} D_j`` on
    and above the diagonal and ``D_{g_n}`` at ``(n+1, n)``.
    """
    d = defects(gam)
    out = np.zeros((size, size), dtype=complex)
    for n in range(1, size + 1):
        cols = np.arange(n, size + 1)
        runs = np.concatenate(([1.0], np.cumprod(d[n:size])))
        out[n - 1, n - 1 :] = -np.conj(gam[n - 1]) * gam[cols] * runs[: cols.size]
        if n < size:
            out[n, n - 1] = d[n]
    return out


def output_row(gam: np.ndarray, size: int) -> np.ndarray:
    """``(g_1 D_0, g_2 D_0 D_1, ..., g_size prod_{j<size} D_j)``."""
    d = defects(gam)
    weights = np.cumprod(d[:size])
    return gam[1 : size + 1] * weights


@dataclass(frozen=True, eq=False)
class ColligationModel:
    regime: Regime
    T: np.ndarray
    F: np.ndarray
    G: np.ndarray
    S: complex
    main_size: int
    shift_size: int

    @property
    def size(self) -> int:
        return self.T.shape[0]

    def assembled(self) -> np.ndarray:
        """``[[T, F], [G, S]]`` with the scalar coordinate last."""
        n = self.size
        out = np.zeros((n + 1, n + 1), dtype=complex)
        out[:n, :n] = self.T
        out[:n, n] = self.F
        out[n, :n] = self.G
        out[n, n] = self.S
        return out


def build_model(seq: SchurSequence, size: int | None = None, regime: Regime | None = None) -> ColligationModel:
    """Truncated model of the colligation attached to ``seq``.

    Terminated sequences give the exact finite model whose size equals the
    index of the unimodular parameter. Open sequences default to the
    two-block model, truncated at ``size`` in both blocks.
    """
    if regime is None:
        regime = Regime.FINITE_BLASCHKE if seq.status is Status.TERMINATED else Regime.GAMMA_L2
    if regime is Regime.FINITE_BLASCHKE:
        if seq.status is not Status.TERMINATED:
            raise DomainError("the finite model needs a terminated sequence")
        degree = seq.N
        if size is not None and size != degree:
            raise DomainError(f"finite model size must equal the degree {degree}")
        gam = seq.params
        T = main_block(gam, degree)
        F = np.zeros(degree, dtype=complex)
        if degree:
            F[0] = defects(gam[:1])[0]
        G = output_row(gam, degree)
        return ColligationModel(regime, T, F, G, complex(gam[0]), degree, 0)

    if seq.status is Status.TERMINATED:
        raise DomainError(f"regime {regime.value} needs an open sequence")
    if size is None or size < 1:
        raise DomainError("model size must be positive")
    gam = _params_for(seq, size)
    main = main_block(gam, size)
    F_main = np.zeros(size, dtype=complex)
    F_main[0] = defects(gam[:1])[0]
    G_main = output_row(gam, size)
    if regime is Regime.DIVERGENT:
        return ColligationModel(regime, main, F_main, G_main, complex(gam[0]), size, 0)

    tail = tail_products(seq)
    T = np.zeros((2 * size, 2 * size), dtype=complex)
    T[:size, :size] = main
    # only the first coshift vector feeds back into the main block
    T[:size, size] = [-np.conj(gam[k - 1]) * tail[k] for k in range(1, size + 1)]
    T[size:, size:] = np.eye(size, k=1)
    F = np.concatenate((F_main, np.zeros(size, dtype=complex)))
    G = np.concatenate((G_main, np.zeros(size, dtype=complex)))
    G[size] = tail[0]
    return ColligationModel(Regime.GAMMA_L2, T, F, G, complex(gam[0]), size, size)


def characteristic_taylor(model: ColligationModel, n_terms: int) -> np.ndarray:
    """``c_0 = S`` and ``c_n = G T^{n-1} F`` by repeated matrix-vector products."""
    if n_terms < 1:
        raise DomainError("n_terms must be positive")
    if model.regime is not Regime.FINITE_BLASCHKE and n_terms > model.main_size + 1:
        raise DomainError(f"a model of size {model.main_size} determines only {model.main_size + 1} coefficients")
    out = np.zeros(n_terms, dtype=complex)
    out[0] = model.S
    vec = model.F.copy()
    for n in range(1, n_terms):
        out[n] = model.G @ vec
        vec = model.T @ vec
    return out


def naimark_moments(model: ColligationModel, n: int) -> np.ndarray:
    """``s_k`` = bottom-right entry of ``Y^k`` for k = 1..n."""
    if model.regime is not Regime.FINITE_BLASCHKE and n > model.main_size + 1:
        raise DomainError(f"a model of size {model.main_size} determines only {model.main_size + 1} moments")
    Y = model.assembled()
    vec = np.zeros(Y.shape[0], dtype=complex)
    vec[-1] = 1.0
    out = np.zeros(n, dtype=complex)
    for k in range(n):
        vec = Y @ vec
        out[k] = vec[-1]
    return out


def ggt_isometry(seq: SchurSequence, size: int) -> np.ndarray:
    """Leading ``size x size`` block of the Hessenberg isometry.

    First row ``(g_0, D_0 g_1, D_0 D_1 g_2, ...)``, first column
    ``(g_0, D_0, 0, ...)`` and the main block of the model below/right.
    """
    seq.require_open("ggt_isometry")
    if size < 1:
        raise DomainError("size must be positive")
    gam = _params_for(seq, size)
    out = np.zeros((size, size), dtype=complex)
    out[0, 0] = gam[0]
    out[0, 1:] = output_row(gam, size - 1)
    if size > 1:
        out[1, 0] = defects(gam[:1])[0]
        out[1:, 1:] = main_block(gam, size - 1)
    return out


def rotation(g: complex) -> np.ndarray:
    d = defects(np.array([g]))[0]
    return np.array([[g, d], [d, -np.conj(g)]], dtype=complex)


def rotation_product(seq: SchurSequence, size: int) -> np.ndarray:
    """Leading block of ``V_0 V_1 V_2 ...`` with ``V_j`` the rotation of ``g_j`` at slots ``j, j+1``.

    Factors ``V_j`` with ``j >= size`` only touch columns past the block, so
    the product of the first ``size`` factors in dimension ``size + 1`` suffices.
    """
    seq.require_open("rotation_product")
    gam = _params_for(seq, size)
    acc = np.eye(size + 1, dtype=complex)
    for j in range(size):
        acc[:, j : j + 2] = acc[:, j : j + 2] @ rotation(gam[j])
    return acc[:size, :size]


@dataclass(frozen=True, eq=False)
class NilpotentPart:
    """Matrix of the nilpotent candidate together with its kernel vector."""

    matrix: np.ndarray
    alpha: np.ndarray
    kernel_residual: float


def t_gf_matrix(seq: SchurSequence, m: int, tol_kernel: float = 1e-6, tol_sep: float = 10.0) -> NilpotentPart:
    """The ``m x m`` matrix whose nilpotency certifies a polynomial of degree ``m``.

    It is the leading block of :func:`main_block` with ``D_{g_m} * alpha``
    subtracted from its last column, where ``(alpha, 1)`` spans the kernel of
    the Gram matrix of order ``m + 1``.
    """
    seq.require_open("t_gf_matrix")
    if m < 1:
        raise DomainError("degree must be at least 1")
    kern = null_vector(seq, m, tol_kernel, tol_sep)
    alpha = kern.vector[:m]
    gam = _params_for(seq, m)
    mat = main_block(gam, m)
    mat[:, m - 1] -= defects(gam[m : m + 1])[0] * alpha
    return NilpotentPart(mat, alpha, kern.residual)
