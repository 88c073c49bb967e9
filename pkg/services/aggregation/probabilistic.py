"""Probabilistic approximation of a block quotient.

Column j of the approximation picks row i with probability m_ij / m_j, the
columns independently. Draws use PCG64 and compare an integer in [0, m_j)
with the cumulative counts, so they are exact and portable for a given seed.
"""

import logging
from fractions import Fraction
from typing import Sequence

import numpy as np
from numpy.random import PCG64, Generator

from core.errors import DeadColumnError, DimensionMismatchError, InvalidInputError
from services.stp import CountMatrix, LogicalMatrix, booleanize

from .models import BlockQuotient

logger = logging.getLogger(__name__)


def make_rng(seed: int | None) -> Generator:
    return Generator(PCG64(seed))


def realization_probability(count: CountMatrix, selection: Sequence[int]) -> Fraction:
    """∏_j m_{i_j, j} / ∏_j m_j for the realization δ_ξ[i_1, ..., i_η]"""
    if len(selection) != count.n_cols:
        raise DimensionMismatchError("realization_probability", count.shape, (1, len(selection)))
    sums = count.column_sums()
    probability = Fraction(1)
    for j, row in enumerate(selection):
        if not 1 <= row <= count.rows:
            raise InvalidInputError(f"Selected row {row} outside [1, {count.rows}] in column {j + 1}")
        if sums[j] == 0:
            raise DeadColumnError(j + 1)
        probability *= Fraction(int(count.data[row - 1, j]), int(sums[j]))
    return probability


def draw_row(count: CountMatrix, column: int, rng: Generator) -> int:
    """One draw (1-based row) from column `column` (1-based)"""
    weights = count.data[:, column - 1]
    total = int(weights.sum())
    if total == 0:
        raise DeadColumnError(column)
    threshold = int(rng.integers(0, total))
    return int(np.searchsorted(np.cumsum(weights), threshold, side="right")) + 1


def sample_realization(bq: BlockQuotient, seed: int | None = None, rng: Generator | None = None) -> LogicalMatrix:
    """A logical matrix drawn column by column from the count distribution"""
    count = bq.count
    dead = bq.dead_columns
    if dead:
        raise DeadColumnError(dead[0])
    rng = rng or make_rng(seed)
    thresholds = rng.integers(0, count.column_sums())
    cumulative = np.cumsum(count.data, axis=0)
    rows = (cumulative <= thresholds[None, :]).sum(axis=0) + 1
    return LogicalMatrix(count.rows, rows)


def support_matches(bq: BlockQuotient) -> bool:
    """The support of the probabilistic approximation is the Boolean quotient"""
    return booleanize(bq.prob.support()) == bq.boolean_sim
