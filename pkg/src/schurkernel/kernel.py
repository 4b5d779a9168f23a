"""L-values, Q-values and the triangular/Gram matrices built from them.

Indexing conventions (1-based in the docstrings, 0-based in arrays):

* ``lower[k, j] = tail[k] * L_{k-j}(W^j gamma)`` for ``j <= k``;
* ``step[k, j] = -gamma_j * prod_{i=j+1}^{k-1} D_i * conj(gamma_k)`` below the
  diagonal, ``D_k`` on it, so that ``lower(gamma) = step(gamma) @ lower(W gamma)``;
* ``defect_vector[k] = conj(gamma_k) * prod_{j<k} D_j``;
* ``gram = I - lower @ lower^*`` and ``gram_dets[m] = det(gram[:m, :m])``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DomainError, SchurError, SchurSequence, defects, tail_products


class KernelError(SchurError):
    """The null space of a Gram matrix could not be isolated cleanly."""


@dataclass(frozen=True, eq=False)
class LTable:
    """``values[m, n] = L_n(W^m gamma)`` for ``0 <= m <= N+1`` and ``0 <= n <= n_max``."""

    values: np.ndarray

    @property
    def n_max(self) -> int:
        return self.values.shape[1] - 1

    def __call__(self, n: int, m: int = 0) -> complex:
        """``L_n(W^m gamma)``; rows past ``N+1`` belong to the zero sequence."""
        if n > self.n_max:
            raise IndexError(f"table only holds L_0..L_{self.n_max}")
        m = min(m, self.values.shape[0] - 1)
        return complex(self.values[m, n])


def l_table(seq: SchurSequence, n_max: int) -> LTable:
    """Tabulate ``L_n(W^m gamma)`` through the backward recurrence.

    For fixed ``n`` the recurrence
    ``L_n(W^m g) = L_n(W^{m+1} g) - conj(g_{m+n}) * sum_{j<n} g_{m+j} L_j(W^m g)``
    is a reverse cumulative sum over ``m`` once the inner sums for smaller
    ``n`` are known, so the table is filled one column at a time.
    """
    seq.require_open("l_table")
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    rows = seq.N + 2
    gam = seq.padded(rows + n_max + 1)
    table = np.zeros((rows, n_max + 1), dtype=complex)
    table[:, 0] = 1.0
    partial = gam[:rows].copy()  # sum_{j<n} g_{m+j} L_j(W^m g), currently n = 1
    for n in range(1, n_max + 1):
        step_terms = -np.conj(gam[n : n + rows]) * partial
        table[:, n] = np.cumsum(step_terms[::-1])[::-1]
        partial += gam[n : n + rows] * table[:, n]
    table.setflags(write=False)
    return LTable(table)


def q_values(seq: SchurSequence, table: LTable | None = None) -> np.ndarray:
    """``Q(W^m gamma)`` for ``m = 0..N+1`` (zero from ``N+1`` on)."""
    seq.require_open("q_values")
    if table is None or table.n_max < seq.N + 1:
        table = l_table(seq, seq.N + 1)
    rows = seq.N + 2
    gam = seq.padded(rows + table.n_max + 1)
    out = np.zeros(rows, dtype=complex)
    for m in range(rows):
        width = table.n_max + 1
        out[m] = -np.dot(gam[m : m + width], table.values[m, :width])
    return out


def q_value(seq: SchurSequence) -> complex:
    """``Q(gamma) = -sum_j gamma_j L_j(gamma)``."""
    return complex(q_values(seq)[0])


def hankel_q(seq: SchurSequence, n: int) -> np.ndarray:
    """Hankel matrix with ``(i, j)`` entry ``Q(W^{i+j-1} gamma)``, 1-based."""
    if n < 1:
        raise DomainError("matrix size must be positive")
    qs = q_values(seq)
    diag = np.zeros(2 * n, dtype=complex)
    k = min(diag.size, qs.size)
    diag[:k] = qs[:k]
    idx = np.arange(n)
    return diag[idx[:, None] + idx[None, :] + 1]


def lower_matrix(seq: SchurSequence, n: int, table: LTable | None = None) -> np.ndarray:
    """Lower-triangular n x n matrix with ``(k, j)`` entry ``Pi_k L_{k-j}(W^j gamma)``."""
    seq.require_open("lower_matrix")
    if n < 1:
        raise DomainError("matrix size must be positive")
    if table is None or table.n_max < n - 1:
        table = l_table(seq, n - 1)
    tail = tail_products(seq)
    out = np.zeros((n, n), dtype=complex)
    last_row = table.values.shape[0] - 1
    for k in range(1, n + 1):
        for j in range(1, k + 1):
            out[k - 1, j - 1] = tail[k] * table.values[min(j, last_row), k - j]
    return out


def step_matrix(seq: SchurSequence, n: int) -> np.ndarray:
    """One-step factor: ``lower(gamma) = step(gamma) @ lower(W gamma)``."""
    if n < 1:
        raise DomainError("matrix size must be positive")
    gam = seq.padded(n + 1)
    d = defects(gam)
    out = np.diag(d[1:].astype(complex))
    for k in range(2, n + 1):
        run = 1.0
        for j in range(k - 1, 0, -1):
            out[k - 1, j - 1] = -gam[j] * run * np.conj(gam[k])
            run *= d[j]
    return out


def defect_vector(seq: SchurSequence, n: int) -> np.ndarray:
    """``(conj g_1, conj g_2 D_1, ..., conj g_n prod_{j<n} D_j)``."""
    gam = seq.padded(n + 1)
    d = defects(gam)
    weights = np.concatenate(([1.0], np.cumprod(d[1:n])))
    return np.conj(gam[1 : n + 1]) * weights


def gram_matrix(lower: np.ndarray) -> np.ndarray:
    """``I - lower @ lower^*``, symmetrized."""
    gram = np.eye(lower.shape[0]) - lower @ lower.conj().T
    return 0.5 * (gram + gram.conj().T)


def hermitian_det(mat: np.ndarray) -> float:
    """Determinant of a Hermitian matrix.

    LU pivoting on a subnormal entry overflows to nan; the eigenvalue product
    is the fallback for that case.
    """
    # exactly singular matrices are expected (zero tails) and come out as 0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        det = np.linalg.det(mat).real
    if np.isfinite(det):
        return float(det)
    return float(np.prod(np.linalg.eigvalsh(mat)))


def leading_determinants(gram: np.ndarray) -> np.ndarray:
    """``[1, det gram[:1,:1], ..., det gram]`` as reals."""
    n = gram.shape[0]
    dets = np.ones(n + 1)
    for m in range(1, n + 1):
        dets[m] = hermitian_det(gram[:m, :m])
    return dets


@dataclass(frozen=True, eq=False)
class KernelBundle:
    depth: int
    lower: np.ndarray
    step: np.ndarray
    defect_vector: np.ndarray
    gram: np.ndarray
    gram_dets: np.ndarray
    tail: np.ndarray


def build_bundle(seq: SchurSequence, n: int, table: LTable | None = None) -> KernelBundle:
    """All depth-``n`` matrices of ``seq`` at once."""
    seq.require_open("build_bundle")
    lower = lower_matrix(seq, n, table)
    gram = gram_matrix(lower)
    return KernelBundle(
        depth=n,
        lower=lower,
        step=step_matrix(seq, n),
        defect_vector=defect_vector(seq, n),
        gram=gram,
        gram_dets=leading_determinants(gram),
        tail=tail_products(seq).pi.copy(),
    )


def gram_profile(seq: SchurSequence, n: int, table: LTable | None = None) -> np.ndarray:
    """Determinants of the Gram matrices of orders 0..n."""
    return leading_determinants(gram_matrix(lower_matrix(seq, n, table)))


@dataclass(frozen=True)
class NullVector:
    vector: np.ndarray
    smallest: float
    next_smallest: float
    residual: float


def null_vector(seq: SchurSequence, order: int, tol_kernel: float, tol_sep: float) -> NullVector:
    """Vector spanning the (numerical) kernel of the Gram matrix of size ``order + 1``.

    The eigenvector of the smallest eigenvalue is rescaled so its last
    coordinate equals one.
    """
    size = order + 1
    gram = gram_matrix(lower_matrix(seq, size))
    vals, vecs = np.linalg.eigh(gram)
    smallest = float(vals[0])
    second = float(vals[1]) if size > 1 else float("inf")
    if size > 1 and second < tol_sep * max(abs(smallest), np.finfo(float).tiny):
        raise KernelError(
            f"kernel not isolated: eigenvalues {smallest:.3e} and {second:.3e} are not separated"
        )
    vec = vecs[:, 0]
    last = vec[-1]
    if abs(last) < tol_kernel:
        raise KernelError(f"last kernel coordinate {abs(last):.3e} vanishes; rank is inconsistent")
    vec = vec / last
    residual = float(np.linalg.norm(gram @ vec))
    if residual > tol_kernel * float(np.linalg.norm(vec)):
        raise KernelError(f"no kernel: smallest eigenvalue {smallest:.3e} exceeds tolerance {tol_kernel:g}")
    return NullVector(vec, smallest, second, residual)
