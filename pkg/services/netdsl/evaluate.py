"""Direct evaluation of expressions and synchronous network steps.

Values are 1-based delta indices. On digits d = value - 1 (0 = true) the
connectives read NOT = k-1-d, AND = max, OR = min, IMPLIES = min(k-1-a, b),
IFF = |a-b|, XOR = k-1-|a-b|; for k = 2 these are the Boolean connectives.
"""

from typing import Callable, Mapping, Sequence

from core.errors import UndeclaredIdentifierError

from .models import BinOp, Const, Expr, Network, Not, Op, Table, Var

BINARY_DIGITS: dict[Op, Callable[[int, int, int], int]] = {
    Op.AND: lambda a, b, k: max(a, b),
    Op.OR: lambda a, b, k: min(a, b),
    Op.IMPLIES: lambda a, b, k: min(k - 1 - a, b),
    Op.IFF: lambda a, b, k: abs(a - b),
    Op.XOR: lambda a, b, k: k - 1 - abs(a - b),
}


def negate_digit(d: int, k: int) -> int:
    return k - 1 - d


def evaluate(expr: Expr, assignment: Mapping[str, int], k: int) -> int:
    """Value (1-based) of expr under assignment (1-based values)"""
    if isinstance(expr, Var):
        try:
            return assignment[expr.name]
        except KeyError:
            raise UndeclaredIdentifierError(expr.name) from None
    if isinstance(expr, Const):
        return expr.index
    if isinstance(expr, Not):
        return negate_digit(evaluate(expr.operand, assignment, k) - 1, k) + 1
    if isinstance(expr, BinOp):
        left = evaluate(expr.left, assignment, k) - 1
        right = evaluate(expr.right, assignment, k) - 1
        return BINARY_DIGITS[expr.op](left, right, k) + 1
    if isinstance(expr, Table):
        index = 0
        for arg in expr.args:
            index = index * k + evaluate(arg, assignment, k) - 1
        return expr.entries[index]
    raise TypeError(f"Unknown expression node {type(expr).__name__}")


def step_network(network: Network, state: Mapping[str, int], controls: Mapping[str, int] | None = None) -> dict[str, int]:
    """x(t+1) from x(t) and u(t) by evaluating every update synchronously"""
    assignment = dict(state)
    assignment.update(controls or {})
    return {node: evaluate(network.updates[node], assignment, network.k) for node in network.nodes}


def output_values(network: Network, state: Mapping[str, int]) -> tuple[int, ...]:
    return tuple(evaluate(expr, state, network.k) for expr in network.outputs.values())


def run_network(
    network: Network,
    initial: Mapping[str, int],
    inputs: Sequence[Sequence[int]],
) -> list[tuple[int, ...]]:
    """Output word y(0), ..., y(T) for control values inputs[t] (one value per control)"""
    state = dict(initial)
    word = [output_values(network, state)]
    for values in inputs:
        state = step_network(network, state, dict(zip(network.controls, values)))
        word.append(output_values(network, state))
    return word
