"""Exact configuration-space counting with arbitrary-precision integers.

The configuration space of a board with n interchangeable pins, m function
kinds per pin, and assignments up to length L is the number of pairs
(nonempty pin subset of size <= L, kind multiset matching the subset size).
These counts exceed 10**12 at realistic board sizes, so everything here is
exact integer arithmetic (Python ints never overflow).
"""

from __future__ import annotations

import math
from functools import lru_cache


def binomial(n: int, k: int) -> int:
    """n choose k, exactly. Zero when k > n; requires n, k >= 0."""
    if n < 0 or k < 0:
        raise ValueError("binomial requires nonnegative arguments")
    if k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def k_factor(n: int, m: int) -> int:
    """Number of distinct kind multisets of length n over m kinds.

    Computed by the recurrence

        k_factor(n, m) = 1 + sum(k_factor(p, m - 1) for p in 1..n)   if m > 1
        k_factor(n, 1) = 1

    which agrees with the closed form binomial(n + m - 1, m - 1) everywhere
    (asserted by the test suite, not assumed here).
    """
    if n < 1 or m < 1:
        raise ValueError("k_factor requires n >= 1 and m >= 1")
    if m == 1:
        return 1
    return 1 + sum(k_factor(p, m - 1) for p in range(1, n + 1))


def config_space(n_pins: int, m: int, max_len: int) -> int:
    """Size of the configuration space: pin subsets of size 1..max_len, each
    paired with every kind multiset of matching size over m kinds.

    Subset sizes above n_pins contribute nothing (their binomial is zero), so
    max_len larger than n_pins is permitted.
    """
    if n_pins < 0 or max_len < 0:
        raise ValueError("n_pins and max_len must be nonnegative")
    if m < 1:
        raise ValueError("m must be positive")
    return sum(binomial(n_pins, k) * k_factor(k, m) for k in range(1, max_len + 1))


def config_space_board(board) -> int:
    """Configuration count for a concrete, heterogeneous board.

    Counts pairs (nonempty pin subset, choice of one function entry per pin
    in the subset): the product of (1 + cost) over all pins, minus the empty
    selection.
    """
    product = 1
    for pin in board.pins:
        product *= 1 + pin.cost
    return product - 1
