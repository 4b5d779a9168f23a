"""Verdicts on a Schur parameter sequence.

Every verdict is three-valued. A finite section can only show that a
determinant is small, never that it vanishes, so "yes/no" answers always
carry the numbers they were drawn from.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field

import numpy as np

from .colligation import t_gf_matrix
from .config import DEFAULT, Config, Tolerances
from .core import DomainError, SchurSequence, Status, defects, shift, tail_products
from .kernel import KernelError, gram_matrix, gram_profile, lower_matrix


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


class HSVerdict(enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Rank:
    """``Finite(value)`` when ``finite`` is true, otherwise ``AtLeast(value)``."""

    finite: bool
    value: int
    gram_dets: tuple[float, ...] = ()

    def __str__(self) -> str:
        return f"{'Finite' if self.finite else 'AtLeast'}({self.value})"


def rank_from_dets(dets: np.ndarray, tol_sigma: float) -> Rank:
    """First ``n`` with ``dets[n] > tol * dets[n-1]`` and ``dets[n+1] <= tol * dets[n]``."""
    for n in range(dets.size - 1):
        prev = dets[n - 1] if n else 1.0
        if dets[n] > tol_sigma * prev and dets[n + 1] <= tol_sigma * dets[n]:
            return Rank(True, n, tuple(map(float, dets)))
        if dets[n] <= tol_sigma * prev:
            break
    return Rank(False, dets.size - 1, tuple(map(float, dets)))


def rank_of(seq: SchurSequence, n_max: int, tol_sigma: float = DEFAULT.tolerances.tol_sigma) -> Rank:
    seq.require_open("rank_of")
    if n_max < 1:
        raise DomainError("n_max must be positive")
    return rank_from_dets(gram_profile(seq, n_max), tol_sigma)


@dataclass(frozen=True)
class Rationality:
    answer: Answer
    reason: str


def is_rational(seq: SchurSequence, n_max: int, tol: Tolerances = DEFAULT.tolerances) -> Rationality:
    if seq.status is Status.TERMINATED:
        return Rationality(Answer.YES, f"finite Blaschke product of degree {seq.N}")
    rank = rank_of(seq, n_max, tol.tol_sigma)
    if rank.finite:
        factors = "factor" if rank.value == 1 else "factors"
        return Rationality(
            Answer.YES, f"rank {rank.value}: block of a Blaschke-Potapov product with {rank.value} {factors}"
        )
    last = rank.gram_dets[-1]
    if last >= tol.sigma_floor:
        return Rationality(
            Answer.NO,
            f"Gram determinants stay above {tol.sigma_floor:g} through depth {n_max} "
            f"(last {last:.3e}); deeper truncation could still reveal a zero",
        )
    return Rationality(Answer.UNDETERMINED, f"no vanishing Gram determinant up to depth {n_max}")


@dataclass(frozen=True)
class LevelTrace:
    shift: int
    ratios: tuple[float, ...]
    depth: int


@dataclass(frozen=True)
class Level:
    level: int | None
    traces: tuple[LevelTrace, ...]
    note: str = ""


def _level_trace(seq: SchurSequence, m: int, n_max: int, tol_sigma: float) -> LevelTrace:
    here = shift(seq, m)
    there = shift(seq, m + 1)
    dets_here = gram_profile(here, n_max)
    dets_there = gram_profile(there, n_max)
    weights = np.cumprod(1.0 - np.abs(here.padded(n_max + 1)) ** 2)
    ratios = []
    for n in range(n_max + 1):
        if n and (
            dets_here[n] <= tol_sigma * dets_here[n - 1] or dets_there[n] <= tol_sigma * dets_there[n - 1]
        ):
            break
        ratios.append(float(weights[n] * dets_there[n] / dets_here[n]))
    return LevelTrace(m, tuple(ratios), len(ratios) - 1)


def level_estimate(
    seq: SchurSequence, n_max: int, m_max: int, tol: Tolerances = DEFAULT.tolerances
) -> Level:
    """Number of leading shifts needed to reach a pure sequence.

    For finite rank each shift of a non-pure sequence lowers the rank by one
    and shifts of a pure sequence keep it, so the level is the first ``m``
    with ``rank(W^m g) == rank(W^{m+1} g)``. Otherwise the level is the
    smallest ``m`` whose ratio trace
    ``prod_{j=0}^n (1 - |g_{m+j}|^2) * sigma_n(W^{m+1} g) / sigma_n(W^m g)``
    still exceeds ``tol_level`` at the deepest depth reached.
    """
    seq.require_open("level_estimate")
    traces = []
    ranks = [rank_of(shift(seq, m), n_max, tol.tol_sigma) for m in range(m_max + 2)]
    if ranks[0].finite:
        for m in range(m_max + 1):
            traces.append(_level_trace(seq, m, n_max, tol.tol_sigma))
            if ranks[m + 1].finite and ranks[m + 1].value == ranks[m].value:
                return Level(m, tuple(traces), f"rank profile {[str(r) for r in ranks[: m + 2]]}")
        return Level(None, tuple(traces), f"rank still dropping after {m_max} shifts")
    for m in range(m_max + 1):
        trace = _level_trace(seq, m, n_max, tol.tol_sigma)
        traces.append(trace)
        if trace.ratios[-1] > tol.tol_level:
            return Level(m, tuple(traces))
    return Level(None, tuple(traces), f"no ratio trace stayed above {tol.tol_level:g} for m <= {m_max}")


def ratio_vector(seq: SchurSequence, m: int, n: int) -> np.ndarray:
    """``(conj g_{m+1}, conj g_{m+2} / D_{m+2}, ..., conj g_{m+n} / prod_{j=2}^n D_{m+j})``."""
    gam = shift(seq, m).padded(n + 1)
    d = defects(gam)
    inv = np.concatenate(([1.0], np.cumprod(1.0 / d[2 : n + 1])))
    return np.conj(gam[1 : n + 1]) * inv


@dataclass(frozen=True)
class PSDResult:
    feasible: bool
    c_min: float
    range_residual: float


def psd_criterion(
    seq: SchurSequence, m: int, n: int, cutoff: float | None = None, tol: Tolerances = DEFAULT.tolerances
) -> PSDResult:
    """Least ``c`` making ``[[A_n(W^{m+1} g), v], [v^*, c]]`` positive semidefinite.

    Eigenvalues below ``cutoff`` (relative to the largest, default
    ``tol_psd``) are treated as zero; ``v`` must then lie in the span of the
    remaining eigenvectors up to ``tol_range``.
    """
    seq.require_open("psd_criterion")
    cutoff = tol.tol_psd if cutoff is None else cutoff
    vec = ratio_vector(seq, m, n)
    gram = gram_matrix(lower_matrix(shift(seq, m + 1), n))
    vals, vecs = np.linalg.eigh(gram)
    scale = max(float(vals[-1]), 0.0)
    keep = vals > cutoff * scale if scale > 0 else np.zeros(vals.size, bool)
    coords = vecs.conj().T @ vec
    residual = float(np.linalg.norm(coords[~keep]))
    c_min = float(np.sum(np.abs(coords[keep]) ** 2 / vals[keep]))
    feasible = residual <= tol.tol_range * max(1.0, float(np.linalg.norm(vec)))
    return PSDResult(feasible, c_min, residual)


@dataclass(frozen=True)
class HelsonSzego:
    strong_szego_sum: float
    double_product: float
    sigma_min_profile: tuple[float, ...]
    lower_bounds: tuple[float, ...]
    top_eigenvalues: tuple[float, ...]
    verdict: HSVerdict


def smallest_singular_profile(lower: np.ndarray) -> np.ndarray:
    """Smallest singular value of each leading block of a lower-triangular matrix."""
    n = lower.shape[0]
    return np.array([np.linalg.svd(lower[:k, :k], compute_uv=False)[-1] for k in range(1, n + 1)])


def helson_szego(seq: SchurSequence, n_max: int, tol: Tolerances = DEFAULT.tolerances, window: int = 5) -> HelsonSzego:
    """Finite-section diagnostics for bounded invertibility of the triangular matrix.

    ``lower_bounds[n-1] = prod_{k=1}^n Pi_k`` bounds ``sigma_min`` of the
    depth-``n`` block from below. The verdict is ``satisfied`` when the
    profile ends above ``hs_floor`` and moved by less than ``hs_floor`` over
    the last ``window`` depths, ``violated`` when it ends below ``hs_floor``.
    """
    if not seq.is_open:
        raise DomainError("Helson-Szego diagnostics need an open sequence")
    gam = seq.params
    strong = float(np.sum(np.arange(gam.size) * np.abs(gam) ** 2))
    tail = tail_products(seq).pi
    double = float(np.prod(tail[1:] ** 2))
    lower = lower_matrix(seq, n_max)
    profile = smallest_singular_profile(lower)
    bounds = np.cumprod(np.array([tail[k] if k < tail.size else 1.0 for k in range(1, n_max + 1)]))
    tops = np.array([np.linalg.eigvalsh(gram_matrix(lower[:k, :k]))[-1] for k in range(1, n_max + 1)])
    final = profile[-1]
    drift = profile[max(0, n_max - 1 - window)] - final
    if final < tol.hs_floor:
        verdict = HSVerdict.VIOLATED
    elif drift <= tol.hs_floor:
        verdict = HSVerdict.SATISFIED
    else:
        verdict = HSVerdict.UNDETERMINED
    return HelsonSzego(
        strong, double, tuple(map(float, profile)), tuple(map(float, bounds)), tuple(map(float, tops)), verdict
    )


@dataclass(frozen=True)
class Polynomial:
    degree: int | None
    residual: float
    matrix: np.ndarray | None = None
    note: str = ""


def _matrix_power_norm(mat: np.ndarray, power: int) -> float:
    return float(np.linalg.norm(np.linalg.matrix_power(mat, power), 2)) if power else 1.0


def polynomial_type(seq: SchurSequence, n_max: int, tol: Tolerances = DEFAULT.tolerances) -> Polynomial:
    """Degree of ``theta`` when it is a polynomial, decided through nilpotency."""
    if seq.status is Status.TERMINATED:
        if np.all(seq.params[:-1] == 0):
            return Polynomial(seq.N, 0.0, note="monomial u * z^m")
        return Polynomial(None, float("nan"), note="finite Blaschke product with a zero in the disk")
    rank = rank_of(seq, n_max, tol.tol_sigma)
    if not rank.finite:
        return Polynomial(None, float("nan"), note=f"rank undetermined ({rank})")
    m = rank.value
    if m == 0:
        return Polynomial(0, 0.0, np.zeros((0, 0)), note="constant function")
    try:
        part = t_gf_matrix(seq, m, tol.tol_kernel, tol.tol_sep)
    except KernelError as exc:
        return Polynomial(None, float("nan"), note=str(exc))
    residual = _matrix_power_norm(part.matrix, m)
    before = _matrix_power_norm(part.matrix, m - 1)
    if residual <= tol.tol_nilp and before > tol.tol_nilp:
        return Polynomial(m, residual, part.matrix)
    return Polynomial(None, residual, part.matrix, note=f"nilpotency residual {residual:.3e} at rank {m}")


@dataclass(frozen=True)
class ClassificationReport:
    rank: Rank | None
    rational: Rationality
    level: Level | None
    polynomial: Polynomial
    helson_szego: HelsonSzego | None
    tolerances: dict = field(default_factory=dict)


def classify(seq: SchurSequence, config: Config = DEFAULT) -> ClassificationReport:
    tol = config.tolerances
    depth = config.depths
    rational = is_rational(seq, depth.n_max, tol)
    polynomial = polynomial_type(seq, depth.n_max, tol)
    if seq.status is Status.TERMINATED:
        return ClassificationReport(None, rational, None, polynomial, None, asdict(tol))
    rank = rank_of(seq, depth.n_max, tol.tol_sigma)
    level = level_estimate(seq, depth.n_max, depth.m_max, tol)
    hs = helson_szego(seq, depth.n_max, tol)
    return ClassificationReport(rank, rational, level, polynomial, hs, asdict(tol))
