"""Pretty printers; parsing their output gives back the same model"""

from .models import BinOp, Const, Expr, Network, Not, RawTransitionSpec, Table, Var


def format_expr(expr: Expr, k: int) -> str:
    """Fully parenthesized rendering of an expression"""
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Const):
        if expr.index == 1:
            return "true"
        if expr.index == k:
            return "false"
        return f"const[{expr.index}]"
    if isinstance(expr, Not):
        return f"!{format_expr(expr.operand, k)}"
    if isinstance(expr, BinOp):
        return f"({format_expr(expr.left, k)} {expr.op.value} {format_expr(expr.right, k)})"
    if isinstance(expr, Table):
        entries = ",".join(str(entry) for entry in expr.entries)
        args = ", ".join(format_expr(arg, k) for arg in expr.args)
        return f"table[{entries}]({args})"
    raise TypeError(f"Unknown expression node {type(expr).__name__}")


def format_network(network: Network) -> str:
    lines = [f"net {network.name} k={network.k}"]
    if network.controls:
        lines.append("controls " + " ".join(network.controls))
    for node in network.nodes:
        lines.append(f"{node} <- {format_expr(network.updates[node], network.k)}")
    for output, expr in network.outputs.items():
        lines.append(f"output {output} = {format_expr(expr, network.k)}")
    for block in network.blocks:
        line = f"block {block.name} = {{{', '.join(block.nodes)}}}"
        if block.outputs is not None:
            line += f" outputs {{{', '.join(block.outputs)}}}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def format_transition_system(spec: RawTransitionSpec) -> str:
    lines = [f"ts {spec.name}", "states " + " ".join(spec.states)]
    if spec.inputs:
        lines.append("inputs " + " ".join(spec.inputs))
    lines.append("obs " + " ".join(spec.observations))
    for transition in spec.transitions:
        head = transition.state if transition.input is None else f"{transition.state} {transition.input}"
        lines.append(f"trans {head} -> {{{', '.join(transition.successors)}}}")
    for state in spec.states:
        lines.append(f"label {state} = {spec.labels[state]}")
    return "\n".join(lines) + "\n"
