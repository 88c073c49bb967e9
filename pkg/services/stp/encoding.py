"""Vector-form encoding of k-valued assignments.

A variable value is a 1-based delta index: true = delta_k^1, false = delta_k^k.
A composite x_1 ⋉ ... ⋉ x_n is indexed with the first variable most significant.
"""

from typing import Sequence

import numpy as np

from core.errors import InvalidInputError


def vector_index(values: Sequence[int], k: int) -> int:
    """1-based composite index of per-variable 1-based values"""
    index = 0
    for value in values:
        if not 1 <= value <= k:
            raise InvalidInputError(f"Value {value} outside [1, {k}]")
        index = index * k + (value - 1)
    return index + 1


def index_values(index: int, k: int, n: int) -> tuple[int, ...]:
    """Inverse of vector_index for n variables"""
    if not 1 <= index <= k**n:
        raise InvalidInputError(f"Composite index {index} outside [1, {k**n}]")
    rest = index - 1
    values = []
    for _ in range(n):
        rest, digit = divmod(rest, k)
        values.append(digit + 1)
    return tuple(reversed(values))


def digit_columns(k: int, n: int, columns: np.ndarray | None = None) -> np.ndarray:
    """0-based digits of every composite index, shape (len(columns), n)

    Used for exhaustive enumeration; the caller keeps n small.
    """
    if columns is None:
        columns = np.arange(k**n, dtype=np.int64)
    weights = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (columns[:, None] // weights[None, :]) % k
