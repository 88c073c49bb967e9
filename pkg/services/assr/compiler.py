"""Compilation of expressions, networks and raw transition systems into ASSR form"""

import logging
from typing import Sequence

import numpy as np

from core.config import settings
from core.errors import SizeCapExceededError, UndeclaredIdentifierError
from services.netdsl import BinOp, Const, Expr, Network, Not, RawTransitionSpec, Table, Var, variables
from services.stp import (
    BooleanMatrix,
    LogicalMatrix,
    identity,
    khatri_rao,
    kron,
    ones_row,
    power_reducing_matrix,
    stp,
    stp_chain,
    swap_matrix,
)

from .models import Assr, AssrKind
from .structure import NOT, operator_structure_matrix

logger = logging.getLogger(__name__)

# Above this composite width the pairwise join J ⋉ (I ⊗ M) ⋉ PR (width² columns)
# is replaced by the equal column-wise Khatri-Rao product
STP_JOIN_LIMIT = 256


def projection_matrix(position: int, arity: int, k: int) -> LogicalMatrix:
    """P with P ⋉ x_1 ⋉ ... ⋉ x_arity = x_{position+1} (position is 0-based)"""
    selector = kron(identity(k), ones_row(k ** (arity - 1)))
    return stp(selector, swap_matrix(k**position, k))


def _join(first: LogicalMatrix, second: LogicalMatrix, width: int) -> LogicalMatrix:
    # (J z) ⋉ (M z) = J ⋉ (I_width ⊗ M) ⋉ PR_width ⋉ z
    if width <= STP_JOIN_LIMIT:
        return stp_chain(first, kron(identity(width), second), power_reducing_matrix(width))
    return khatri_rao(first, second)


def _compile(expr: Expr, positions: dict[str, int], arity: int, k: int) -> LogicalMatrix:
    width = k**arity
    if isinstance(expr, Var):
        return projection_matrix(positions[expr.name], arity, k)
    if isinstance(expr, Const):
        return stp(LogicalMatrix(k, [expr.index]), ones_row(width))
    if isinstance(expr, Not):
        return stp(operator_structure_matrix(NOT, k), _compile(expr.operand, positions, arity, k))
    if isinstance(expr, BinOp):
        joined = _join(
            _compile(expr.left, positions, arity, k),
            _compile(expr.right, positions, arity, k),
            width,
        )
        return stp(operator_structure_matrix(expr.op, k), joined)
    if isinstance(expr, Table):
        parts = [_compile(arg, positions, arity, k) for arg in expr.args]
        joined = parts[0]
        for part in parts[1:]:
            joined = _join(joined, part, width)
        return stp(LogicalMatrix(k, expr.entries), joined)
    raise TypeError(f"Unknown expression node {type(expr).__name__}")


def compile_expr(expr: Expr, var_order: Sequence[str], k: int) -> LogicalMatrix:
    """
    Structure matrix of an expression

    Args:
        expr: expression over the names in var_order
        var_order: ordering of the composite z = z_1 ⋉ ... ⋉ z_r
        k: domain size

    Returns:
        M_e in L_{k x k^r} with M_e ⋉ z = e(z)
    """
    var_order = tuple(var_order)
    positions = {name: i for i, name in enumerate(var_order)}
    for name in variables(expr):
        if name not in positions:
            raise UndeclaredIdentifierError(name, message=f"Variable '{name}' is not in the variable order {var_order}")
    return _compile(expr, positions, len(var_order), k)


def _local_order(expr: Expr, order: Sequence[str]) -> list[str]:
    used = set(variables(expr))
    return [name for name in order if name in used]


def _composite_columns(
    exprs: Sequence[Expr], order: Sequence[str], k: int, columns: np.ndarray
) -> np.ndarray:
    """0-based composite index of (e_1, ..., e_q) evaluated at every column of the order"""
    width = len(order)
    position = {name: i for i, name in enumerate(order)}
    result = np.zeros(columns.shape, dtype=np.int64)
    for expr in exprs:
        local_vars = _local_order(expr, order)
        matrix = compile_expr(expr, local_vars, k)
        local = np.zeros(columns.shape, dtype=np.int64)
        for name in local_vars:
            local = local * k + (columns // k ** (width - 1 - position[name])) % k
        result = result * k + (matrix.cols[local] - 1)
    return result


def compile_network(network: Network, size_cap: int | None = None) -> Assr:
    """
    ASSR of a network: x(t+1) = L ⋉ u(t) ⋉ x(t), y(t) = H ⋉ x(t)

    Each node's structure matrix is compiled over its own arguments and then
    read off column by column for every composite (u, x).
    """
    cap = size_cap or settings.SIZE_CAP
    k, n, m = network.k, network.n, network.m
    total = k ** (m + n)
    if total > cap:
        raise SizeCapExceededError(total, cap)

    order = network.controls + network.nodes
    columns = np.arange(total, dtype=np.int64)
    successors = _composite_columns([network.updates[node] for node in network.nodes], order, k, columns)
    L = LogicalMatrix(k**n, successors + 1)

    if network.outputs:
        states = np.arange(k**n, dtype=np.int64)
        observed = _composite_columns(list(network.outputs.values()), network.nodes, k, states)
        H = LogicalMatrix(k ** network.p, observed + 1)
    else:
        H = ones_row(k**n)

    logger.info(f"Compiled network '{network.name}': L is {L.rows}x{L.n_cols}, H is {H.rows}x{H.n_cols}")
    return Assr(
        L=L,
        H=H,
        kind=AssrKind.NETWORK,
        k=k,
        state_names=network.nodes,
        input_names=network.controls,
        observation_names=tuple(network.outputs),
        name=network.name,
    )


def compile_raw_ts(spec: RawTransitionSpec) -> Assr:
    """Boolean L with ones exactly at Σ(x_i, u_j); logical when every pair has one successor"""
    n = len(spec.states)
    m = len(spec.inputs) or 1
    state_index = {state: i for i, state in enumerate(spec.states)}
    input_index = {name: j for j, name in enumerate(spec.inputs)}
    obs_index = {name: i + 1 for i, name in enumerate(spec.observations)}

    data = np.zeros((n, m * n), dtype=bool)
    for transition in spec.transitions:
        j = input_index[transition.input] if transition.input is not None else 0
        column = j * n + state_index[transition.state]
        for successor in transition.successors:
            data[state_index[successor], column] = True

    boolean = BooleanMatrix(data)
    L = boolean.to_logical() if boolean.is_logical() else boolean
    H = LogicalMatrix(len(spec.observations), [obs_index[spec.labels[state]] for state in spec.states])

    logger.info(f"Compiled transition system '{spec.name}': n={n}, m={m}, p={H.rows}")
    return Assr(
        L=L,
        H=H,
        kind=AssrKind.TRANSITION_SYSTEM,
        state_names=spec.states,
        input_names=spec.inputs,
        observation_names=spec.observations,
        name=spec.name,
    )
