import numpy as np
import pytest
from hypothesis import given

from schurkernel.core import (
    DomainError,
    SchurSequence,
    Status,
    defect,
    defects,
    shift,
    tail_products,
)
from sequences import open_sequences


@pytest.mark.parametrize(
    "value, expected",
    [(0, 1.0), (2 / 3, np.sqrt(5) / 3), (1, 0.0), (0.6j, 0.8), (1 + 1e-13, 0.0)],
)
def test_defect_values(value, expected):
    assert defect(value) == pytest.approx(expected, abs=1e-15)


def test_defect_outside_disk():
    with pytest.raises(DomainError):
        defect(1.001)


def test_defect_vectorized_agrees():
    vals = np.array([0, 0.3 + 0.4j, 2 / 3, 0.999])
    assert np.allclose(defects(vals), [defect(v) for v in vals], atol=0, rtol=1e-15)


class TestSequenceValidation:
    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            SchurSequence.from_values([])

    def test_nan_rejected(self):
        with pytest.raises(DomainError):
            SchurSequence.from_values([0.1, float("nan")])

    def test_outside_disk_rejected(self):
        with pytest.raises(DomainError, match="modulus"):
            SchurSequence.from_values([0.2, 1.5])

    def test_interior_unimodular_rejected(self):
        with pytest.raises(DomainError, match="interior"):
            SchurSequence.from_values([0.2, 1.0, 0.3], terminated=True)

    def test_terminated_inferred_and_normalized(self):
        seq = SchurSequence.from_values([0.0, 0.0, 1j * (1 + 1e-13)])
        assert seq.status is Status.TERMINATED
        assert seq.N == 2
        assert abs(seq.params[-1]) == 1.0

    def test_terminated_flag_needs_unimodular_end(self):
        with pytest.raises(DomainError):
            SchurSequence.from_values([0.1, 0.2], terminated=True)

    def test_open_flag_rejects_unimodular_end(self):
        with pytest.raises(DomainError):
            SchurSequence.from_values([0.1, 1.0], terminated=False)

    def test_params_read_only(self):
        seq = SchurSequence.from_values([0.1, 0.2])
        with pytest.raises(ValueError):
            seq.params[0] = 0.5

    def test_zero_tail_indexing(self):
        seq = SchurSequence.from_values([0.1, 0.2])
        assert seq[1] == 0.2 and seq[7] == 0
        assert np.array_equal(seq.padded(4), [0.1, 0.2, 0, 0])


def test_tail_products_of_zero_sequence():
    assert np.array_equal(tail_products(SchurSequence.zeros(3)).pi, np.ones(4))


def test_tail_products_rank_one_telescopes():
    # prod_{k=1}^N (1 - 4/(2k+1)^2) = (2N+3) / (3(2N+1))
    n = 2000
    seq = SchurSequence.from_values([0.5] + [2 / (2 * j + 1) for j in range(1, n + 1)])
    pi1_sq = tail_products(seq)[1] ** 2
    assert pi1_sq == pytest.approx((2 * n + 3) / (3 * (2 * n + 1)), rel=1e-12)
    assert abs(pi1_sq - 1 / 3) < 1e-3


def test_tail_products_harmonic_telescopes():
    # the first entry 1/(0+1) would be unimodular, so gamma_0 is replaced; it does not enter Pi_1
    n = 4000
    seq = SchurSequence.from_values([0.5] + [1 / (j + 1) for j in range(1, n + 1)])
    assert tail_products(seq)[1] ** 2 == pytest.approx((n + 2) / (2 * (n + 1)), rel=1e-12)


def test_tail_products_reject_terminated():
    with pytest.raises(DomainError):
        tail_products(SchurSequence.from_values([0.0, 1.0]))


@given(open_sequences(max_size=30))
def test_tail_products_invariants(seq):
    pi = tail_products(seq).pi
    d = defects(seq.params)
    assert pi[-1] == 1.0
    assert np.all(pi > 0) and np.all(pi <= 1)
    assert np.all(np.diff(pi) >= 0)
    assert np.allclose(pi[:-1], d * pi[1:], rtol=1e-15, atol=0)


@given(open_sequences(min_size=2, max_size=30))
def test_tail_products_shift_consistent(seq):
    assert np.array_equal(tail_products(shift(seq, 1)).pi, tail_products(seq).pi[1:])


def test_shift_examples():
    seq = SchurSequence.from_values([0.5, 2 / 3, 2 / 5])
    assert np.array_equal(shift(seq, 2).params, [2 / 5])
    assert shift(seq, 0).params is not None and np.array_equal(shift(seq, 0).params, seq.params)
    empty = shift(seq, 5)
    assert len(empty) == 0 and empty.is_open and empty[0] == 0
    with pytest.raises(DomainError):
        shift(seq, -1)


def test_shift_past_unimodular_entry_is_open():
    seq = SchurSequence.from_values([0.5, 1.0])
    assert shift(seq, 1).status is Status.TERMINATED
    assert shift(seq, 2).status is Status.OPEN
