"""Assembly of the aggregated network: blocks replaced by their quotients"""

import logging
from dataclasses import replace
from typing import Sequence

import networkx as nx

from core.config import settings
from core.errors import AggregationError
from services.assr import compile_network
from services.netdsl import BlockDeclaration, Network, build_network_graph, rename, variables

from .blocks import extract_block, is_aggregateable, is_output_decoupled, resolve
from .models import AggregatedNetwork, Block, BlockQuotient, Source, SourceKind
from .simulation import block_simulation

logger = logging.getLogger(__name__)


def _check_disjoint(declarations: Sequence[BlockDeclaration]):
    owner: dict[str, str] = {}
    for declaration in declarations:
        for node in declaration.nodes:
            if node in owner:
                raise AggregationError(
                    f"Node '{node}' belongs to blocks '{owner[node]}' and '{declaration.name}'",
                    block=declaration.name,
                    identifier=node,
                )
            owner[node] = declaration.name


def _check_outputs_bound(network: Network, blocks: Sequence[Block]):
    for block in blocks:
        members, declared = set(block.nodes), set(block.outputs)
        for output, expr in network.outputs.items():
            for name in variables(expr):
                if name in members and name not in declared:
                    raise AggregationError(
                        f"System output '{output}' reads '{name}', which is hidden inside block '{block.name}'",
                        block=block.name,
                        identifier=output,
                    )


def _rename_checked(expr, renaming: dict[str, str], hidden: dict[str, str], context: str):
    for name in variables(expr):
        if name in hidden:
            raise AggregationError(
                f"{context} reads '{name}', which is not an output of block '{hidden[name]}'",
                block=hidden[name],
                identifier=name,
            )
    return rename(expr, renaming)


def build_wiring_graph(agg: AggregatedNetwork) -> nx.MultiDiGraph:
    """Controls, blocks, residual nodes and outputs; every edge carries the wire label"""
    graph = nx.MultiDiGraph(name=agg.name)
    for control in agg.controls:
        graph.add_node(control, kind="control")
    owner = {}
    for i, bq in enumerate(agg.blocks, start=1):
        graph.add_node(bq.block.name, kind="block", index=i)
        for j in range(1, bq.block.beta + 1):
            owner[agg.block_state_name(i, j)] = bq.block.name
    for node in agg.residual:
        graph.add_node(node, kind="residual")
    for output in agg.outputs:
        graph.add_node(output, kind="output")

    for i, bq in enumerate(agg.blocks, start=1):
        for control in bq.block.controls:
            graph.add_edge(control, bq.block.name, label=control)
        for j in range(1, bq.block.alpha + 1):
            v_name = agg.block_input_name(i, j)
            source = agg.wiring[v_name]
            graph.add_edge(owner.get(source.name, source.name), bq.block.name, label=f"{v_name}={source.name}")
    for node, expr in agg.residual_updates.items():
        for name in variables(expr):
            graph.add_edge(owner.get(name, name), node, label=name)
    for output, expr in agg.outputs.items():
        for name in variables(expr):
            graph.add_edge(owner.get(name, name), output, label=name)
    return graph


def assemble_aggregated(
    network: Network,
    blocks: Sequence[BlockDeclaration] | None = None,
    strict: bool | None = None,
    size_cap: int | None = None,
) -> AggregatedNetwork:
    """
    Replace every block by its quotient and wire the blocks together

    Args:
        network: the original network
        blocks: block declarations, defaults to the ones declared in the network
        strict: raise instead of warn on a block that is not aggregate-able
            (defaults to settings.STRICT_AGGREGATION)
        size_cap: column cap for compiling each extracted block

    Raises:
        AggregationError: overlapping blocks, a system output reading a hidden
            node, a block that is not output decoupled, or a block input whose
            source is hidden inside another block
    """
    declarations = tuple(network.blocks if blocks is None else blocks)
    strict = settings.STRICT_AGGREGATION if strict is None else strict
    if not declarations:
        raise AggregationError("No blocks to aggregate")

    _check_disjoint(declarations)
    graph = build_network_graph(network)
    resolved = [resolve(network, declaration, graph) for declaration in declarations]
    _check_outputs_bound(network, resolved)

    for block in resolved:
        if not is_output_decoupled(network, block.nodes, block.outputs):
            raise AggregationError(f"Block '{block.name}' is not output decoupled", block=block.name)
        # extract_block logs the non-strict case
        if strict and not is_aggregateable(graph, block.nodes):
            raise AggregationError(
                f"Block '{block.name}' is not aggregate-able: a block input feeds a block output directly",
                block=block.name,
            )

    # z{i}_{j} for declared outputs; other block nodes are hidden
    renaming: dict[str, str] = {}
    hidden: dict[str, str] = {}
    for i, block in enumerate(resolved, start=1):
        for node in block.nodes:
            hidden[node] = block.name
        for j, node in enumerate(block.outputs, start=1):
            renaming[node] = AggregatedNetwork.block_state_name(i, j)
            del hidden[node]

    in_blocks = {node for block in resolved for node in block.nodes}
    residual = tuple(node for node in network.nodes if node not in in_blocks)
    renaming.update({node: node for node in residual})

    wiring: dict[str, Source] = {}
    for i, block in enumerate(resolved, start=1):
        for j, node in enumerate(block.inputs, start=1):
            v_name = AggregatedNetwork.block_input_name(i, j)
            if node in hidden:
                raise AggregationError(
                    f"Block input {v_name} of '{block.name}' reads '{node}', "
                    f"which is not an output of block '{hidden[node]}'",
                    block=block.name,
                    identifier=node,
                )
            kind = SourceKind.RESIDUAL if node in residual else SourceKind.BLOCK_OUTPUT
            wiring[v_name] = Source(kind=kind, name=renaming[node], original=node)

    residual_updates = {
        node: _rename_checked(network.updates[node], renaming, hidden, f"Node '{node}'") for node in residual
    }
    outputs = {
        output: _rename_checked(expr, renaming, hidden, f"Output '{output}'") for output, expr in network.outputs.items()
    }

    quotients: list[BlockQuotient] = []
    for block in resolved:
        extracted = extract_block(network, block)
        quotients.append(block_simulation(compile_network(extracted, size_cap), block))

    aggregated = AggregatedNetwork(
        name=network.name,
        k=network.k,
        controls=network.controls,
        blocks=tuple(quotients),
        wiring=wiring,
        renaming=renaming,
        residual=residual,
        residual_updates=residual_updates,
        outputs=outputs,
    )
    aggregated = replace(aggregated, graph=build_wiring_graph(aggregated))
    logger.info(
        f"Aggregated network '{network.name}' has {aggregated.n} state nodes and {aggregated.m} controls "
        f"({len(quotients)} blocks, {len(residual)} residual nodes)"
    )
    return aggregated
