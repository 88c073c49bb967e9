"""Block aggregation of networks

Blocks are extracted as controlled networks, replaced by their quotient
(or its probabilistic approximation) and wired back together.

Usage:
    from services.aggregation import assemble_aggregated, simulate_aggregated
"""

from .assembly import assemble_aggregated, build_wiring_graph
from .blocks import block_io, extract_block, is_aggregateable, is_output_decoupled, resolve
from .models import (
    AggregatedNetwork,
    Block,
    BlockIO,
    BlockQuotient,
    SimulationMode,
    SimulationResult,
    Source,
    SourceKind,
)
from .probabilistic import draw_row, make_rng, realization_probability, sample_realization, support_matches
from .rendering import render_block_diagram, render_network_graph, render_transition_system
from .simulation import block_count_matrix, block_simulation
from .simulator import project_initial, simulate_aggregated

__all__ = [
    "AggregatedNetwork",
    "Block",
    "BlockIO",
    "BlockQuotient",
    "SimulationMode",
    "SimulationResult",
    "Source",
    "SourceKind",
    "assemble_aggregated",
    "block_count_matrix",
    "block_io",
    "block_simulation",
    "build_wiring_graph",
    "draw_row",
    "extract_block",
    "is_aggregateable",
    "is_output_decoupled",
    "make_rng",
    "project_initial",
    "realization_probability",
    "render_block_diagram",
    "render_network_graph",
    "render_transition_system",
    "resolve",
    "sample_realization",
    "simulate_aggregated",
    "support_matches",
]
