"""Blocks, block quotients and aggregated networks"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict

from services.assr import Assr
from services.netdsl import Expr, Var
from services.stp import BooleanMatrix, CountMatrix, LogicalMatrix, StochasticMatrix


class BlockIO(BaseModel):
    """Formal interface of a node set A inside a network graph"""

    model_config = ConfigDict(frozen=True)

    inputs: tuple[str, ...]  # outside nodes with an edge into A, network order
    outputs: tuple[str, ...]  # nodes of A with an edge leaving A, network order
    controls: tuple[str, ...] = ()  # system controls feeding A, system order


class Block(BaseModel):
    """A resolved block: nodes, block inputs v, declared block outputs q (order fixes H_A)"""

    model_config = ConfigDict(frozen=True)

    name: str
    nodes: tuple[str, ...]
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    controls: tuple[str, ...] = ()
    formal_outputs: tuple[str, ...] = ()

    @property
    def alpha(self) -> int:
        return len(self.inputs)

    @property
    def beta(self) -> int:
        return len(self.outputs)

    def state_name(self, node: str) -> str:
        return f"z{self.nodes.index(node) + 1}"

    def input_name(self, node: str) -> str:
        return f"v{self.inputs.index(node) + 1}"

    def output_name(self, node: str) -> str:
        return f"q{self.outputs.index(node) + 1}"

    def renaming(self) -> dict[str, str]:
        """Original names to the names used inside the extracted network"""
        mapping = {node: self.state_name(node) for node in self.nodes}
        mapping.update({node: self.input_name(node) for node in self.inputs})
        return mapping


@dataclass(frozen=True, eq=False)
class BlockQuotient:
    """Simulation of one block: counts M_A, Boolean quotient, column-normalized probabilities.

    Columns are indexed by the composite (u, v, y) with the retained controls
    first, then the block inputs, then the block outputs.
    """

    block: Block
    assr: Assr
    count: CountMatrix
    boolean_sim: BooleanMatrix
    prob: StochasticMatrix
    deterministic: bool

    @property
    def xi(self) -> int:
        return self.count.rows

    @property
    def eta(self) -> int:
        return self.count.n_cols

    @property
    def logical(self) -> Optional[LogicalMatrix]:
        return self.boolean_sim.to_logical() if self.deterministic else None

    @property
    def dead_columns(self) -> tuple[int, ...]:
        return tuple(int(j) + 1 for j in np.flatnonzero(self.count.column_sums() == 0))


class SourceKind(str, Enum):
    BLOCK_OUTPUT = "block_output"
    RESIDUAL = "residual"


class Source(BaseModel):
    """Where a block input reads its value from"""

    model_config = ConfigDict(frozen=True)

    kind: SourceKind
    name: str  # name in the aggregated network
    original: str  # node name in the original network


@dataclass(frozen=True, eq=False)
class AggregatedNetwork:
    """Blocks replaced by their quotients plus the untouched residual nodes.

    Aggregated state nodes are z{i}_{j} (j-th declared output of the i-th block)
    followed by the residual nodes; block inputs are v{i}_{j}.
    """

    name: str
    k: int
    controls: tuple[str, ...]
    blocks: tuple[BlockQuotient, ...]
    # v{i}_{j} -> source
    wiring: dict[str, Source]
    # original node -> aggregated state name, for block outputs and residual nodes
    renaming: dict[str, str]
    residual: tuple[str, ...] = ()
    residual_updates: dict[str, Expr] = field(default_factory=dict)
    # system output -> expression over aggregated state names
    outputs: dict[str, Expr] = field(default_factory=dict)
    # MultiDiGraph over controls, blocks, residual nodes and outputs; edges carry a label
    graph: Optional[nx.MultiDiGraph] = None

    @property
    def state_names(self) -> tuple[str, ...]:
        names = [self.block_state_name(i, j) for i, bq in enumerate(self.blocks, start=1) for j in range(1, bq.block.beta + 1)]
        return tuple(names) + self.residual

    @property
    def n(self) -> int:
        return len(self.state_names)

    @property
    def m(self) -> int:
        return len(self.controls)

    @staticmethod
    def block_state_name(block_index: int, output_index: int) -> str:
        return f"z{block_index}_{output_index}"

    @staticmethod
    def block_input_name(block_index: int, input_index: int) -> str:
        return f"v{block_index}_{input_index}"

    def output_binding(self, output: str) -> Optional[str]:
        """Aggregated node an output is bound to, when the output is a single node"""
        expr = self.outputs[output]
        return expr.name if isinstance(expr, Var) else None

    def source_of(self, block_index: int, input_index: int) -> Source:
        return self.wiring[self.block_input_name(block_index, input_index)]


class SimulationMode(str, Enum):
    BOOLEAN_NONDET = "boolean-nondet"
    PROBABILISTIC = "probabilistic"


class SimulationResult(BaseModel):
    """Output words y(0) ... y(T); each letter holds one value per system output"""

    model_config = ConfigDict(frozen=True)

    mode: SimulationMode
    horizon: int
    seed: Optional[int] = None
    words: tuple[tuple[tuple[int, ...], ...], ...]
    truncated: tuple[tuple[tuple[int, ...], ...], ...] = ()
    # aggregated state per step, probabilistic mode only
    states: tuple[dict[str, int], ...] = ()
    partial: bool = False
