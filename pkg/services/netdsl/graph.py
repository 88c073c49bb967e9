"""Network graph: x_a -> x_b iff x_a occurs in f_b (controls and outputs alike)"""

from dataclasses import dataclass

import networkx as nx

from .models import Network, variables

STATE = "state"
CONTROL = "control"
OUTPUT = "output"


@dataclass(frozen=True, eq=False)
class NetworkGraph:
    """Directed graph over nodes, controls and output vertices; vertex attribute `kind`"""

    graph: nx.DiGraph
    nodes: tuple[str, ...]
    controls: tuple[str, ...]
    outputs: tuple[str, ...]

    @property
    def edges(self) -> set[tuple[str, str]]:
        return set(self.graph.edges)

    def has_edge(self, source: str, target: str) -> bool:
        return self.graph.has_edge(source, target)

    def kind(self, vertex: str) -> str:
        return self.graph.nodes[vertex]["kind"]

    def predecessors(self, vertex: str) -> list[str]:
        return list(self.graph.predecessors(vertex))

    def successors(self, vertex: str) -> list[str]:
        return list(self.graph.successors(vertex))

    def in_degree(self, vertex: str) -> int:
        return self.graph.in_degree(vertex)


def build_network_graph(network: Network) -> NetworkGraph:
    graph = nx.DiGraph(name=network.name)
    for node in network.nodes:
        graph.add_node(node, kind=STATE)
    for control in network.controls:
        graph.add_node(control, kind=CONTROL)
    for output in network.outputs:
        graph.add_node(output, kind=OUTPUT)

    for node in network.nodes:
        for source in variables(network.updates[node]):
            graph.add_edge(source, node)
    for output, expr in network.outputs.items():
        for source in variables(expr):
            graph.add_edge(source, output)

    return NetworkGraph(graph=graph, nodes=network.nodes, controls=network.controls, outputs=tuple(network.outputs))
