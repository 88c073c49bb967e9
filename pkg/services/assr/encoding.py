"""Vector-form conversion between named network assignments and state indices"""

from typing import Mapping, Sequence

from core.errors import InvalidInputError, UndeclaredIdentifierError
from services.netdsl import Network
from services.stp import index_values, vector_index


def _ordered(names: Sequence[str], assignment: Mapping[str, int]) -> list[int]:
    unknown = set(assignment) - set(names)
    if unknown:
        raise UndeclaredIdentifierError(sorted(unknown)[0])
    missing = [name for name in names if name not in assignment]
    if missing:
        raise InvalidInputError(f"No value given for {', '.join(missing)}")
    return [assignment[name] for name in names]


def encode_state(network: Network, assignment: Mapping[str, int]) -> int:
    """1-based index of x = x_1 ⋉ ... ⋉ x_n"""
    return vector_index(_ordered(network.nodes, assignment), network.k)


def decode_state(network: Network, index: int) -> dict[str, int]:
    return dict(zip(network.nodes, index_values(index, network.k, network.n)))


def encode_controls(network: Network, assignment: Mapping[str, int] | None = None) -> int:
    """1-based index of u = u_1 ⋉ ... ⋉ u_m; always 1 for an autonomous network"""
    if not network.controls:
        return 1
    return vector_index(_ordered(network.controls, assignment or {}), network.k)


def decode_controls(network: Network, index: int) -> dict[str, int]:
    if not network.controls:
        return {}
    return dict(zip(network.controls, index_values(index, network.k, network.m)))
