"""Block interfaces and extraction of a block as a controlled network"""

import logging
from typing import Iterable, Sequence

from core.errors import AggregationError, InvariantViolation, UndeclaredIdentifierError
from services.netdsl import BlockDeclaration, Network, NetworkGraph, Var, build_network_graph, rename, variables
from services.netdsl.graph import CONTROL, STATE

from .models import Block, BlockIO

logger = logging.getLogger(__name__)


def _node_set(graph: NetworkGraph, nodes: Iterable[str]) -> set[str]:
    members = set(nodes)
    unknown = members - set(graph.nodes)
    if unknown:
        raise UndeclaredIdentifierError(sorted(unknown)[0], message=f"'{sorted(unknown)[0]}' is not a node of the network")
    return members


def block_io(graph: NetworkGraph, nodes: Iterable[str]) -> BlockIO:
    """
    Block inputs and formal outputs of A

    Inputs are state nodes outside A with an edge into A; outputs are nodes of A
    with an edge to any vertex outside A, output vertices included. Controls
    feeding A are returned separately.
    """
    members = _node_set(graph, nodes)
    inputs, controls = set(), set()
    for node in members:
        for source in graph.predecessors(node):
            if source in members:
                continue
            if graph.kind(source) == STATE:
                inputs.add(source)
            elif graph.kind(source) == CONTROL:
                controls.add(source)

    outputs = {
        node
        for node in members
        if any(target not in members for target in graph.successors(node))
    }
    return BlockIO(
        inputs=tuple(node for node in graph.nodes if node in inputs),
        outputs=tuple(node for node in graph.nodes if node in outputs),
        controls=tuple(control for control in graph.controls if control in controls),
    )


def is_aggregateable(graph: NetworkGraph, nodes: Iterable[str]) -> bool:
    """No edge runs from a block input straight to a block output"""
    io = block_io(graph, nodes)
    return not any(graph.has_edge(source, target) for source in io.inputs for target in io.outputs)


def is_output_decoupled(network: Network, nodes: Iterable[str], outputs: Sequence[str] | None = None) -> bool:
    """Every node of A read by a system output is among the block outputs"""
    members = set(nodes)
    if outputs is None:
        outputs = block_io(build_network_graph(network), members).outputs
    declared = set(outputs)
    for expr in network.outputs.values():
        for name in variables(expr):
            if name in members and name not in declared:
                return False
    return True


def resolve(network: Network, declaration: BlockDeclaration, graph: NetworkGraph | None = None) -> Block:
    """Interface of a declared block; omitted outputs default to the formal outputs"""
    graph = graph or build_network_graph(network)
    io = block_io(graph, declaration.nodes)
    members = set(declaration.nodes)
    outputs = declaration.outputs if declaration.outputs is not None else io.outputs
    for node in outputs:
        if node not in members:
            raise AggregationError(
                f"Block output '{node}' is not a node of block '{declaration.name}'",
                block=declaration.name,
                identifier=node,
            )
    return Block(
        name=declaration.name,
        nodes=tuple(node for node in network.nodes if node in members),
        inputs=io.inputs,
        outputs=tuple(outputs),
        controls=io.controls,
        formal_outputs=io.outputs,
    )


def extract_block(network: Network, block: Block | BlockDeclaration) -> Network:
    """
    Σ_A as a controlled network

    States are the block nodes renamed z1, z2, ...; controls are the retained
    system controls followed by the block inputs v1, v2, ...; outputs q1, q2, ...
    read the declared block outputs in order.
    """
    graph = build_network_graph(network)
    if isinstance(block, BlockDeclaration):
        block = resolve(network, block, graph)
    if not is_aggregateable(graph, block.nodes):
        logger.warning(f"Block '{block.name}' is not aggregate-able; extracting it anyway")

    mapping = block.renaming()
    allowed = set(mapping) | set(block.controls)
    updates = {}
    for node in block.nodes:
        expr = network.updates[node]
        for name in variables(expr):
            if name not in allowed:
                raise InvariantViolation(
                    f"Node '{node}' of block '{block.name}' reads '{name}', which is not a block input",
                    block=block.name,
                    identifier=name,
                )
        updates[mapping[node]] = rename(expr, mapping)

    extracted = Network(
        name=f"{network.name}.{block.name}",
        k=network.k,
        nodes=tuple(mapping[node] for node in block.nodes),
        controls=block.controls + tuple(mapping[node] for node in block.inputs),
        updates=updates,
        outputs={block.output_name(node): Var(mapping[node]) for node in block.outputs},
    )
    logger.debug(
        f"Extracted block '{block.name}': {len(block.nodes)} states, "
        f"{len(block.controls)} controls, alpha={block.alpha}, beta={block.beta}"
    )
    return extracted
