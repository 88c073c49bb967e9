"""Network and transition-system DSLs, expression AST and network graphs"""

from .evaluate import evaluate, output_values, run_network, step_network
from .graph import NetworkGraph, build_network_graph
from .models import (
    BinOp,
    BlockDeclaration,
    Const,
    Expr,
    Network,
    Not,
    Op,
    RawTransitionSpec,
    Table,
    Transition,
    Var,
    rename,
    variables,
)
from .parser import parse_expression, parse_network, parse_transition_system
from .printer import format_expr, format_network, format_transition_system

__all__ = [
    "BinOp",
    "BlockDeclaration",
    "Const",
    "Expr",
    "Network",
    "NetworkGraph",
    "Not",
    "Op",
    "RawTransitionSpec",
    "Table",
    "Transition",
    "Var",
    "build_network_graph",
    "evaluate",
    "format_expr",
    "format_network",
    "format_transition_system",
    "output_values",
    "parse_expression",
    "parse_network",
    "parse_transition_system",
    "rename",
    "run_network",
    "step_network",
    "variables",
]
