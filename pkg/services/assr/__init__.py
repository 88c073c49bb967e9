"""Algebraic state-space representations of networks and transition systems"""

from .compiler import compile_expr, compile_network, compile_raw_ts, projection_matrix
from .encoding import decode_controls, decode_state, encode_controls, encode_state
from .models import Assr, AssrKind
from .structure import NOT, operator_structure_matrix

__all__ = [
    "NOT",
    "Assr",
    "AssrKind",
    "compile_expr",
    "compile_network",
    "compile_raw_ts",
    "decode_controls",
    "decode_state",
    "encode_controls",
    "encode_state",
    "operator_structure_matrix",
    "projection_matrix",
]
