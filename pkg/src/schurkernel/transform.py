"""Taylor coefficients, Schur parameters, moments and Caratheodory coefficients."""

from __future__ import annotations

from typing import Iterable

import numpy as np
from scipy.signal import lfilter

from .colligation import Regime, build_model, characteristic_taylor
from .core import TOL_UNIT, DomainError, NotSchurError, SchurSequence, Status, as_complex_array


def _series_quotient(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """First ``len(num)`` coefficients of ``num / den`` (``den[0] != 0``)."""
    impulse_response = lfilter(num, den, np.eye(1, num.size, dtype=complex)[0])
    return np.asarray(impulse_response, dtype=complex)


def taylor_to_schur(coeffs: Iterable, tol_unit: float = TOL_UNIT) -> SchurSequence:
    """Run the Schur algorithm on the truncated series ``c_0..c_N``.

    Each step loses one coefficient, so ``N + 1`` coefficients yield
    ``gamma_0..gamma_N``. Reaching the unit circle stops the algorithm with
    a terminated sequence; stepping outside raises :class:`NotSchurError`.
    """
    series = as_complex_array(coeffs)
    if series.size == 0:
        raise DomainError("need at least one Taylor coefficient")
    params = []
    for j in range(series.size):
        g = complex(series[0])
        a = abs(g)
        if a > 1 + tol_unit:
            raise NotSchurError(f"|gamma_{j}| = {a:.12g} > 1: not a section of a Schur function", index=j)
        params.append(g)
        if a >= 1 - tol_unit:
            rest = series[1:]
            if rest.size and np.max(np.abs(rest)) > np.sqrt(tol_unit):
                raise NotSchurError(
                    f"|gamma_{j}| = 1 but the remaining series is not constant", index=j
                )
            return SchurSequence.from_values(params, terminated=True, tol_unit=tol_unit)
        if series.size == 1:
            break
        num = series[1:]
        den = -np.conj(g) * series[:-1]
        den[0] += 1.0
        series = _series_quotient(num, den)
    return SchurSequence.from_values(params, terminated=False, tol_unit=tol_unit)


def schur_to_taylor(seq: SchurSequence, n_terms: int) -> np.ndarray:
    """Taylor coefficients ``c_0..c_{n_terms-1}`` read off the model matrices.

    ``c_n`` only involves ``gamma_0..gamma_n``. For terminated sequences the
    finite model is exact and any number of terms may be requested.
    """
    if n_terms < 1:
        raise DomainError("n_terms must be positive")
    if seq.status is Status.TERMINATED:
        return characteristic_taylor(build_model(seq), n_terms)
    if n_terms > seq.N + 1:
        raise DomainError(f"{n_terms} coefficients need {n_terms} parameters, only {seq.N + 1} given")
    size = max(n_terms - 1, 1)
    return characteristic_taylor(build_model(seq, size, Regime.DIVERGENT), n_terms)


def taylor_to_moments(coeffs: Iterable) -> np.ndarray:
    """Moments ``s_1..s_{N+1}`` from ``s_1 = c_0``, ``s_n = sum_{k<n-1} c_k s_{n-1-k} + c_{n-1}``."""
    c = as_complex_array(coeffs)
    s = np.zeros(c.size, dtype=complex)
    for n in range(1, c.size + 1):
        acc = c[n - 1]
        for k in range(n - 1):
            acc += c[k] * s[n - 2 - k]
        s[n - 1] = acc
    return s


def caratheodory_coefficients(moments: Iterable) -> np.ndarray:
    """``(1, 2 s_1, 2 s_2, ...)``."""
    s = as_complex_array(moments)
    return np.concatenate(([1.0 + 0j], 2.0 * s))
