"""One-step dynamics Σ(x, u) read off an ASSR"""

from typing import Iterable

import numpy as np

from core.errors import InvalidInputError
from services.assr import Assr
from services.stp import LogicalMatrix


def successor_table(assr: Assr) -> list[list[frozenset[int]]]:
    """table[u-1][x-1] = Σ(x, u) as 1-based state indices"""
    n = assr.n_states
    if isinstance(assr.L, LogicalMatrix):
        cols = assr.L.cols.tolist()
        return [[frozenset({cols[j * n + i]}) for i in range(n)] for j in range(assr.m_inputs)]
    sets = assr.L.column_sets()
    return [sets[j * n : (j + 1) * n] for j in range(assr.m_inputs)]


def step(assr: Assr, states: Iterable[int], input: int = 1) -> frozenset[int]:
    """Union of Σ(x, input) over the given states; the empty set is a dead end"""
    if not 1 <= input <= assr.m_inputs:
        raise InvalidInputError(f"Input {input} outside [1, {assr.m_inputs}]")
    result: set[int] = set()
    for state in states:
        if not 1 <= state <= assr.n_states:
            raise InvalidInputError(f"State {state} outside [1, {assr.n_states}]")
        result |= assr.successors(state, input)
    return frozenset(result)


def has_dead_ends(assr: Assr) -> bool:
    """True when some (x, u) has no successor"""
    if isinstance(assr.L, LogicalMatrix):
        return False
    return bool(np.any(~assr.L.data.any(axis=0)))
