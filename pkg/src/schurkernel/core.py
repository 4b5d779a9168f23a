"""Schur parameter sequences, defects and tail products.

A sequence is stored as a finite array ``gamma[0..N]``. Anything past index
``N`` is treated as zero, so every infinite object downstream becomes a
finite, exactly computable one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .config import DEFAULT

TOL_UNIT = DEFAULT.tolerances.tol_unit


class SchurError(Exception):
    """Base class for all package errors."""


class DomainError(SchurError, ValueError):
    """An argument lies outside the domain of an operation."""


class NotSchurError(SchurError):
    """Input data cannot come from a contractive function."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class Status(enum.Enum):
    OPEN = "open"
    TERMINATED = "terminated"


def as_complex_array(values: Iterable) -> np.ndarray:
    arr = np.array(list(values) if not isinstance(values, np.ndarray) else values, dtype=complex)
    if arr.ndim != 1:
        raise DomainError("expected a one-dimensional list of numbers")
    return arr


def defect(g: complex, tol_unit: float = TOL_UNIT) -> float:
    """Return sqrt(1 - |g|^2) for a point of the closed disk."""
    a = abs(g)
    if a > 1 + tol_unit:
        raise DomainError(f"|{g}| exceeds 1")
    return float(np.sqrt(max(0.0, (1.0 - a) * (1.0 + a))))


def defects(gamma: np.ndarray) -> np.ndarray:
    """Vectorized :func:`defect` without range checks."""
    a = np.abs(gamma)
    return np.sqrt(np.clip((1.0 - a) * (1.0 + a), 0.0, None))


@dataclass(frozen=True, eq=False)
class SchurSequence:
    """Finite section ``gamma_0..gamma_N`` of a Schur parameter sequence."""

    params: np.ndarray
    status: Status = Status.OPEN

    def __post_init__(self):
        arr = as_complex_array(self.params).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "params", arr)

    @classmethod
    def from_values(
        cls,
        values: Iterable,
        terminated: bool | None = None,
        tol_unit: float = TOL_UNIT,
    ) -> "SchurSequence":
        """Validate and wrap parameters.

        With ``terminated=None`` the status is inferred from the last entry.
        Passing ``True`` insists on a unimodular final entry; ``False`` insists
        on every entry lying strictly inside the disk.
        """
        arr = as_complex_array(values)
        if arr.size == 0:
            raise DomainError("a Schur sequence needs at least one parameter")
        if not np.all(np.isfinite(arr)):
            raise DomainError("parameters must be finite numbers")
        mods = np.abs(arr)
        bad = np.flatnonzero(mods > 1 + tol_unit)
        if bad.size:
            raise DomainError(f"parameter {bad[0]} has modulus {mods[bad[0]]:.6g} > 1")
        unit = np.flatnonzero(mods >= 1 - tol_unit)
        if unit.size and unit[0] != arr.size - 1:
            raise DomainError(f"unimodular parameter at interior index {unit[0]}")
        ends_on_circle = bool(unit.size)
        if terminated is None:
            terminated = ends_on_circle
        if terminated and not ends_on_circle:
            raise DomainError("terminated sequence must end with a unimodular parameter")
        if not terminated and ends_on_circle:
            raise DomainError("open sequence must lie strictly inside the disk")
        if terminated:
            arr = arr.copy()
            arr[-1] = arr[-1] / abs(arr[-1])
        return cls(arr, Status.TERMINATED if terminated else Status.OPEN)

    @classmethod
    def zeros(cls, count: int) -> "SchurSequence":
        return cls(np.zeros(count, dtype=complex))

    @property
    def N(self) -> int:
        return self.params.size - 1

    @property
    def is_open(self) -> bool:
        return self.status is Status.OPEN

    def __len__(self) -> int:
        return self.params.size

    def __getitem__(self, index: int) -> complex:
        """Parameter at ``index``; zero past the end (zero tail)."""
        if index < 0:
            raise IndexError(index)
        if index >= self.params.size:
            return 0j
        return complex(self.params[index])

    def padded(self, length: int) -> np.ndarray:
        """Parameters as an array of the given length, zero-filled past ``N``."""
        out = np.zeros(max(length, 0), dtype=complex)
        k = min(length, self.params.size)
        out[:k] = self.params[:k]
        return out

    def conj(self) -> "SchurSequence":
        return SchurSequence(np.conj(self.params), self.status)

    def require_open(self, what: str = "this operation") -> None:
        if not self.is_open:
            raise DomainError(f"{what} needs an open sequence (all parameters inside the disk)")

    def __repr__(self) -> str:
        return f"SchurSequence(N={self.N}, status={self.status.value})"


@dataclass(frozen=True, eq=False)
class TailProducts:
    """``pi[k] = prod_{j>=k} D_{gamma_j}`` for k = 0..N+1, with ``pi[N+1] = 1``."""

    pi: np.ndarray

    def __getitem__(self, k: int) -> float:
        if k >= self.pi.size:
            return 1.0
        return float(self.pi[k])


def tail_products(seq: SchurSequence) -> TailProducts:
    seq.require_open("tail_products")
    d = defects(seq.params)
    pi = np.ones(seq.params.size + 1)
    for k in range(seq.N, -1, -1):
        pi[k] = d[k] * pi[k + 1]
    pi.setflags(write=False)
    return TailProducts(pi)


def shift(seq: SchurSequence, m: int) -> SchurSequence:
    """Drop the first ``m`` parameters."""
    if m < 0:
        raise DomainError("shift amount must be nonnegative")
    return SchurSequence(seq.params[m:], seq.status if m < seq.params.size else Status.OPEN)
