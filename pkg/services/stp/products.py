"""Semi-tensor, Kronecker and Boolean products over the matrix carriers.

Logical operands stay in index form wherever the product of two logical
matrices is again logical; everything else goes through dense int64 arrays.
"""

import logging
from fractions import Fraction
from math import lcm
from typing import Union

import numpy as np

from core.errors import DimensionMismatchError, InvalidInputError

from .models import BooleanMatrix, CountMatrix, LogicalMatrix, StochasticMatrix

logger = logging.getLogger(__name__)

Matrix = Union[LogicalMatrix, BooleanMatrix, CountMatrix, np.ndarray]


def _dense(matrix: Matrix) -> np.ndarray:
    if isinstance(matrix, (LogicalMatrix, BooleanMatrix, CountMatrix)):
        return matrix.to_dense()
    array = np.asarray(matrix)
    if array.ndim != 2:
        raise InvalidInputError(f"Expected a two-dimensional matrix, got {array.ndim} dims")
    return array


def _shape(matrix: Matrix) -> tuple[int, int]:
    if isinstance(matrix, (LogicalMatrix, BooleanMatrix, CountMatrix)):
        return matrix.shape
    return tuple(np.asarray(matrix).shape)


def _is_boolean_like(matrix: Matrix) -> bool:
    return isinstance(matrix, (LogicalMatrix, BooleanMatrix))


def identity(n: int) -> LogicalMatrix:
    """I_n = delta_n[1, ..., n]"""
    return LogicalMatrix(n, np.arange(1, n + 1, dtype=np.int64))


def ones_row(n: int) -> LogicalMatrix:
    """1_n^T as the logical matrix delta_1[1, ..., 1]"""
    return LogicalMatrix(1, np.ones(n, dtype=np.int64))


def transpose(matrix: Matrix) -> Matrix:
    if _is_boolean_like(matrix):
        return BooleanMatrix(_dense(matrix).T.astype(bool))
    if isinstance(matrix, CountMatrix):
        return CountMatrix(matrix.data.T)
    return _dense(matrix).T


def stp(a: Matrix, b: Matrix) -> Matrix:
    """Semi-tensor product A ⋉ B = (A ⊗ I_{t/p})(B ⊗ I_{t/q}), t = lcm(p, q)

    Two logical operands give a logical result computed on the index arrays;
    any other combination returns a dense integer array.
    """
    n, p = _shape(a)
    q, s = _shape(b)
    t = lcm(p, q)
    tp, tq = t // p, t // q

    if isinstance(a, LogicalMatrix) and isinstance(b, LogicalMatrix):
        # column c of (B ⊗ I_tq) is the unit vector at i; row i of (A ⊗ I_tp) selects block i // tp
        c = np.arange(s * tq, dtype=np.int64)
        i = (b.cols[c // tq] - 1) * tq + c % tq
        indices = (a.cols[i // tp] - 1) * tp + i % tp + 1
        return LogicalMatrix(n * tp, indices)

    left = np.kron(_dense(a), np.eye(tp, dtype=np.int64))
    right = np.kron(_dense(b), np.eye(tq, dtype=np.int64))
    return left @ right


def stp_chain(*factors: Matrix) -> Matrix:
    """Left-to-right STP of several factors (the product is associative)"""
    if not factors:
        raise InvalidInputError("stp_chain needs at least one factor")
    result = factors[0]
    for factor in factors[1:]:
        result = stp(result, factor)
    return result


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; logical ⊗ logical stays logical"""
    if isinstance(a, LogicalMatrix) and isinstance(b, LogicalMatrix):
        indices = (a.cols[:, None] - 1) * b.rows + b.cols[None, :]
        return LogicalMatrix(a.rows * b.rows, indices.reshape(-1))

    product = np.kron(_dense(a), _dense(b))
    if _is_boolean_like(a) and _is_boolean_like(b):
        return BooleanMatrix(product.astype(bool))
    if isinstance(a, (CountMatrix, LogicalMatrix, BooleanMatrix)) and isinstance(b, (CountMatrix, LogicalMatrix, BooleanMatrix)):
        return CountMatrix(product)
    return product


def khatri_rao(a: LogicalMatrix, b: LogicalMatrix) -> LogicalMatrix:
    """Column-wise Kronecker product of two logical matrices with equal column counts"""
    if a.n_cols != b.n_cols:
        raise DimensionMismatchError("khatri_rao", a.shape, b.shape)
    return LogicalMatrix(a.rows * b.rows, (a.cols - 1) * b.rows + b.cols)


def bool_product(a: Matrix, b: Matrix, *more: Matrix) -> Matrix:
    """Product over the (OR, AND) semiring; chains left to right when given more operands"""
    if more:
        return bool_product(bool_product(a, b), *more)

    if _shape(a)[1] != _shape(b)[0]:
        raise DimensionMismatchError("bool_product", _shape(a), _shape(b))

    if isinstance(b, LogicalMatrix):
        if isinstance(a, LogicalMatrix):
            return LogicalMatrix(a.rows, a.cols[b.cols - 1])
        return BooleanMatrix(_dense(a)[:, b.cols - 1] > 0)

    right = _dense(b) > 0
    if isinstance(a, LogicalMatrix):
        result = np.zeros((a.rows, right.shape[1]), dtype=bool)
        np.logical_or.at(result, a.cols - 1, right)
        return BooleanMatrix(result)

    return BooleanMatrix((_dense(a).astype(np.int64) > 0).astype(np.int64) @ right.astype(np.int64) > 0)


def integer_product(a: Matrix, b: Matrix) -> CountMatrix:
    """Ordinary matrix product over the nonnegative integers"""
    if _shape(a)[1] != _shape(b)[0]:
        raise DimensionMismatchError("integer_product", _shape(a), _shape(b))

    if isinstance(b, LogicalMatrix):
        if isinstance(a, LogicalMatrix):
            return CountMatrix(LogicalMatrix(a.rows, a.cols[b.cols - 1]).to_dense())
        return CountMatrix(_dense(a).astype(np.int64)[:, b.cols - 1])

    right = _dense(b).astype(np.int64)
    if isinstance(a, LogicalMatrix):
        result = np.zeros((a.rows, right.shape[1]), dtype=np.int64)
        np.add.at(result, a.cols - 1, right)
        return CountMatrix(result)

    return CountMatrix(_dense(a).astype(np.int64) @ right)


def booleanize(counts: Matrix) -> BooleanMatrix:
    """1 exactly where the count is positive"""
    return BooleanMatrix(_dense(counts) > 0)


def column_normalize(counts: CountMatrix) -> StochasticMatrix:
    """Column j becomes m_{i,j} / m_j; zero columns stay zero and are reported"""
    data = _dense(counts).astype(np.int64)
    sums = data.sum(axis=0)
    dead = tuple(int(j) + 1 for j in np.flatnonzero(sums == 0))
    if dead:
        logger.warning(f"Count matrix has {len(dead)} dead column(s), first is column {dead[0]}")

    entries = tuple(
        tuple(
            Fraction(int(data[i, j]), int(sums[j])) if sums[j] else Fraction(0)
            for j in range(data.shape[1])
        )
        for i in range(data.shape[0])
    )
    return StochasticMatrix(entries, dead)


def swap_matrix(m: int, n: int) -> LogicalMatrix:
    """W_[m,n] with W ⋉ x ⋉ y = y ⋉ x for x in Δ_m, y in Δ_n"""
    if m < 1 or n < 1:
        raise InvalidInputError(f"swap_matrix needs positive dimensions, got {m}, {n}")
    i = np.repeat(np.arange(m, dtype=np.int64), n)
    j = np.tile(np.arange(n, dtype=np.int64), m)
    return LogicalMatrix(m * n, j * m + i + 1)


def power_reducing_matrix(k: int) -> LogicalMatrix:
    """PR_k with x ⋉ x = PR_k ⋉ x for x in Δ_k"""
    if k < 1:
        raise InvalidInputError(f"power_reducing_matrix needs k >= 1, got {k}")
    i = np.arange(k, dtype=np.int64)
    return LogicalMatrix(k * k, i * k + i + 1)
