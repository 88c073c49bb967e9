"""DOT renderings of network graphs, transition graphs and aggregated block diagrams"""

from pathlib import Path
from typing import Sequence

from jinja2 import Environment, FileSystemLoader

from services.assr import Assr, AssrKind
from services.netdsl import BlockDeclaration, NetworkGraph
from services.netdsl.graph import CONTROL, OUTPUT
from services.stp import index_values

from .assembly import build_wiring_graph
from .models import AggregatedNetwork

TEMPLATE_DIR = Path(__file__).resolve().parents[2] / "templates"

templates = Environment(
    loader=FileSystemLoader(str(TEMPLATE_DIR)),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)

BLOCK_COLORS = ("#cfe2f3", "#d9ead3", "#fff2cc", "#f4cccc", "#d9d2e9", "#fce5cd")


def render_network_graph(graph: NetworkGraph, blocks: Sequence[BlockDeclaration] = ()) -> str:
    """Network graph with controls as boxes, outputs as double circles and blocks as clusters"""
    owner = {}
    for i, block in enumerate(blocks):
        for node in block.nodes:
            owner[node] = i

    shapes = {CONTROL: "box", OUTPUT: "doublecircle"}
    nodes = []
    for vertex in graph.controls + graph.nodes + graph.outputs:
        block = owner.get(vertex)
        nodes.append(
            {
                "name": vertex,
                "shape": shapes.get(graph.kind(vertex), "circle"),
                "block": block is not None,
                "color": BLOCK_COLORS[block % len(BLOCK_COLORS)] if block is not None else "",
            }
        )

    return templates.get_template("network_graph.dot.j2").render(
        name=graph.graph.graph.get("name", "network"),
        nodes=nodes,
        blocks=[{"name": block.name, "nodes": block.nodes} for block in blocks],
        edges=sorted(graph.edges),
    )


def render_block_diagram(agg: AggregatedNetwork) -> str:
    """Blocks as records wired by their block inputs, residual nodes and outputs around them"""
    blocks = []
    for i, bq in enumerate(agg.blocks, start=1):
        states = [agg.block_state_name(i, j) for j in range(1, bq.block.beta + 1)]
        blocks.append({"name": bq.block.name, "states": states, "deterministic": bq.deterministic})

    graph = agg.graph if agg.graph is not None else build_wiring_graph(agg)
    edges = [
        {"source": source, "target": target, "label": data["label"]}
        for source, target, data in graph.edges(data=True)
    ]
    outputs = [{"name": output} for output in agg.outputs]

    return templates.get_template("block_diagram.dot.j2").render(
        name=agg.name,
        controls=agg.controls,
        blocks=blocks,
        residual=agg.residual,
        outputs=outputs,
        edges=edges,
    )


def _state_label(assr: Assr, state: int) -> str:
    if assr.kind == AssrKind.NETWORK and assr.k:
        return "".join(str(v) for v in index_values(state, assr.k, len(assr.state_names)))
    if len(assr.state_names) == assr.n_states:
        return assr.state_names[state - 1]
    return f"x{state}"


def _input_label(assr: Assr, input: int) -> str:
    if assr.autonomous and not assr.input_names:
        return ""
    if assr.k:
        return "".join(str(v) for v in index_values(input, assr.k, len(assr.input_names)))
    if len(assr.input_names) == assr.m_inputs:
        return assr.input_names[input - 1]
    return f"u{input}"


def render_transition_system(assr: Assr) -> str:
    """State transition graph of an ASSR; parallel transitions share one edge labelled by their inputs"""
    labels = {}
    for state in range(1, assr.n_states + 1):
        for input in range(1, assr.m_inputs + 1):
            for target in sorted(assr.successors(state, input)):
                labels.setdefault((state, target), []).append(_input_label(assr, input))

    states = [
        {
            "name": _state_label(assr, state),
            "observation": assr.observation_label(assr.observation(state)),
            "dead_end": not any(assr.successors(state, input) for input in range(1, assr.m_inputs + 1)),
        }
        for state in range(1, assr.n_states + 1)
    ]
    edges = [
        {
            "source": _state_label(assr, source),
            "target": _state_label(assr, target),
            "label": ",".join(label for label in inputs if label),
        }
        for (source, target), inputs in sorted(labels.items())
    ]
    return templates.get_template("transition_system.dot.j2").render(
        name=assr.name or "system",
        states=states,
        edges=edges,
    )
