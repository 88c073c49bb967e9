"""Quotient systems under output equivalence"""

import logging

import numpy as np

from services.assr import Assr, AssrKind
from services.stp import BooleanMatrix, LogicalMatrix, bool_product, identity, kron, transpose

from .dynamics import successor_table
from .models import OutputPartition

logger = logging.getLogger(__name__)


def output_partition(assr: Assr) -> OutputPartition:
    """con(X_1), ..., con(X_p); a class is empty when no state produces that observation"""
    observations = assr.H.cols
    classes = tuple(
        tuple(int(x) + 1 for x in np.flatnonzero(observations == i))
        for i in range(1, assr.p_obs + 1)
    )
    return OutputPartition(n_states=assr.n_states, classes=classes)


def concretize(partition: OutputPartition, class_index: int) -> frozenset[int]:
    """con(X_i)"""
    return frozenset(partition.classes[class_index - 1])


def _quotient_names(assr: Assr) -> tuple[str, ...]:
    return tuple(assr.observation_label(i) for i in range(1, assr.p_obs + 1))


def _as_quotient(assr: Assr, L_q: BooleanMatrix | LogicalMatrix) -> Assr:
    if isinstance(L_q, BooleanMatrix) and L_q.is_logical():
        L_q = L_q.to_logical()
    names = _quotient_names(assr)
    return Assr(
        L=L_q,
        H=identity(assr.p_obs),
        kind=AssrKind.QUOTIENT,
        k=assr.k,
        state_names=names,
        input_names=assr.input_names,
        observation_names=names,
        name=f"{assr.name}/~" if assr.name else "quotient",
    )


def quotient(assr: Assr) -> Assr:
    """T/∼ with L_q = H ×_B L ×_B (I_m ⊗ H^T) and H_q = I_p

    For an autonomous system m = 1 and this is M_q = H ×_B M ×_B H^T.
    """
    right = kron(identity(assr.m_inputs), transpose(assr.H))
    L_q = bool_product(assr.H, assr.L, right)
    result = _as_quotient(assr, L_q)
    logger.info(f"Quotient of '{assr.name}': {assr.n_states} states -> {result.n_states} classes")
    return result


def quotient_by_definition(assr: Assr) -> Assr:
    """T/∼ from the set-level definition: X_j ∈ Σ(X_i, u) iff some x_i ∈ con(X_i) has a successor in con(X_j)"""
    partition = output_partition(assr)
    table = successor_table(assr)
    observations = assr.H.cols
    p = partition.p
    columns: list[set[int]] = []
    for u in range(assr.m_inputs):
        for members in partition.classes:
            reached: set[int] = set()
            for x in members:
                reached.update(int(observations[y - 1]) for y in table[u][x - 1])
            columns.append(reached)
    return _as_quotient(assr, BooleanMatrix.from_column_sets(p, columns))


def is_deterministic(system: Assr | BooleanMatrix | LogicalMatrix) -> bool:
    """Every column of L has at most one 1"""
    matrix = system.L if isinstance(system, Assr) else system
    if isinstance(matrix, LogicalMatrix):
        return True
    return bool(np.all(matrix.data.sum(axis=0) <= 1))
