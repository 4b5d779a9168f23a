"""Sequences used by the experiment scripts."""

import numpy as np

from schurkernel import SchurSequence


def rank_one(n):
    return SchurSequence.from_values([0.5] + [2 / (2 * j + 1) for j in range(1, n + 1)])


def rank_two(n):
    return SchurSequence.from_values([0.5] + [0.0 if j % 2 else 2 / (j + 1) for j in range(1, n + 1)])


def inverse_two_minus_z(n):
    return SchurSequence.from_values([1 / (j + 2) for j in range(n + 1)])


def geometric(q, n):
    return SchurSequence.from_values(np.r_[0.0, q ** np.arange(1, n + 1)])


def slow_decay(n, power=0.6):
    return SchurSequence.from_values([0.5 / (j + 1) ** power for j in range(n + 1)])


FAMILIES = {
    "rank-one": rank_one,
    "rank-two": rank_two,
    "inverse-two-minus-z": inverse_two_minus_z,
    "geometric-0.5": lambda n: geometric(0.5, n),
    "slow-decay": slow_decay,
}
