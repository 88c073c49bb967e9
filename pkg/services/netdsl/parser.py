"""Parsers for the network DSL and the transition-system DSL"""

import logging
from functools import reduce

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from core.config import settings
from core.errors import (
    DSLSyntaxError,
    DomainSizeError,
    DuplicateDefinitionError,
    EmptyNetworkError,
    FVNError,
    InvalidInputError,
    UndeclaredIdentifierError,
)

from .grammar import KEYWORDS, NETWORK_GRAMMAR, TRANSITION_GRAMMAR
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
    variables,
)

logger = logging.getLogger(__name__)

_network_parser = Lark(NETWORK_GRAMMAR, parser="lalr", maybe_placeholders=False)
_transition_parser = Lark(TRANSITION_GRAMMAR, parser="lalr", maybe_placeholders=False)


class _Statement:
    """One parsed line: a kind tag plus its payload"""

    def __init__(self, kind: str, *payload):
        self.kind = kind
        self.payload = payload


class NetworkTransformer(Transformer):
    """Turns one parsed network line into a _Statement; k is needed for `false`."""

    def __init__(self, k: int | None):
        super().__init__()
        self.k = k

    # expressions

    def var(self, items):
        return Var(str(items[0]))

    def true(self, _items):
        return Const(1)

    def false(self, _items):
        if self.k is None:
            raise DomainSizeError("`false` used before the `net` declaration fixes k")
        return Const(self.k)

    def const(self, items):
        return Const(int(items[0]))

    def int_list(self, items):
        return tuple(int(item) for item in items)

    def table(self, items):
        return Table(items[0], tuple(items[1:]))

    def not_(self, items):
        return Not(items[0])

    def and_(self, items):
        return reduce(lambda left, right: BinOp(Op.AND, left, right), items)

    def or_(self, items):
        return reduce(lambda left, right: BinOp(Op.OR, left, right), items)

    def xor(self, items):
        return reduce(lambda left, right: BinOp(Op.XOR, left, right), items)

    def iff(self, items):
        return reduce(lambda left, right: BinOp(Op.IFF, left, right), items)

    def implies(self, items):
        return BinOp(Op.IMPLIES, items[0], items[1])

    # statements

    def name_list(self, items):
        return tuple(str(item) for item in items)

    def net_decl(self, items):
        return _Statement("net", str(items[0]), int(str(items[1]).split("=", 1)[1]))

    def controls_decl(self, items):
        return _Statement("controls", tuple(str(item) for item in items))

    def update(self, items):
        return _Statement("update", str(items[0]), items[1])

    def output_decl(self, items):
        return _Statement("output", str(items[0]), items[1])

    def block_outputs(self, items):
        return items[0] if items else ()

    def block_decl(self, items):
        outputs = items[2] if len(items) > 2 else None
        return _Statement("block", str(items[0]), items[1], outputs)

    def expr_only(self, items):
        return _Statement("expr", items[0])


class TransitionTransformer(Transformer):
    def name_list(self, items):
        return tuple(str(item) for item in items)

    def name_decl(self, items):
        return _Statement("ts", str(items[0]))

    def states_decl(self, items):
        return _Statement("states", tuple(str(item) for item in items))

    def inputs_decl(self, items):
        return _Statement("inputs", tuple(str(item) for item in items))

    def obs_decl(self, items):
        return _Statement("obs", tuple(str(item) for item in items))

    def trans_decl(self, items):
        names = [item for item in items if isinstance(item, Token)]
        successors = next((item for item in items if isinstance(item, tuple)), ())
        state = str(names[0])
        input_name = str(names[1]) if len(names) > 1 else None
        return _Statement("trans", state, input_name, successors)

    def label_decl(self, items):
        return _Statement("label", str(items[0]), str(items[1]))


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_line(parser: Lark, transformer: Transformer, text: str, line_number: int) -> _Statement:
    try:
        tree = parser.parse(text)
        return transformer.transform(tree)
    except UnexpectedEOF as e:
        raise DSLSyntaxError(f"Line {line_number}: statement ends early", line_number, len(text) + 1, text) from e
    except UnexpectedCharacters as e:
        raise DSLSyntaxError(
            f"Line {line_number}, column {e.column}: unexpected character {text[e.column - 1]!r}",
            line_number,
            e.column,
            text,
        ) from e
    except UnexpectedInput as e:
        column = e.column if isinstance(e.column, int) and e.column > 0 else len(text) + 1
        token = getattr(e, "token", None)
        found = f" {str(token)!r}" if token is not None and str(token) else ""
        raise DSLSyntaxError(f"Line {line_number}, column {column}: unexpected token{found}", line_number, column, text) from e
    except VisitError as e:
        if isinstance(e.orig_exc, FVNError):
            error = e.orig_exc
            if getattr(error, "line", None) is None and hasattr(error, "line"):
                error.line = line_number
                error.details["line"] = line_number
            raise error from e
        raise


def _check_name(name: str, line: int):
    if name in KEYWORDS:
        raise DSLSyntaxError(f"Line {line}: '{name}' is a reserved word", line, 1, name)


def _check_expression(expr: Expr, k: int, line: int):
    if isinstance(expr, Const):
        if not 1 <= expr.index <= k:
            raise DomainSizeError(f"Line {line}: constant index {expr.index} outside [1, {k}]", expr.index, line)
    elif isinstance(expr, Not):
        _check_expression(expr.operand, k, line)
    elif isinstance(expr, BinOp):
        _check_expression(expr.left, k, line)
        _check_expression(expr.right, k, line)
    elif isinstance(expr, Table):
        expected = k ** len(expr.args)
        if len(expr.entries) != expected:
            raise DomainSizeError(
                f"Line {line}: table with {len(expr.args)} argument(s) needs {expected} entries, got {len(expr.entries)}",
                len(expr.entries),
                line,
            )
        for entry in expr.entries:
            if not 1 <= entry <= k:
                raise DomainSizeError(f"Line {line}: table entry {entry} outside [1, {k}]", entry, line)
        for arg in expr.args:
            _check_expression(arg, k, line)


def parse_network(text: str) -> Network:
    """
    Parse the network DSL

    Args:
        text: DSL source; `net` must be the first statement

    Returns:
        Validated Network with nodes in the order of their update lines
    """
    name: str | None = None
    k: int | None = None
    controls: tuple[str, ...] = ()
    controls_line: int | None = None
    updates: dict[str, Expr] = {}
    update_lines: dict[str, int] = {}
    outputs: dict[str, Expr] = {}
    output_lines: dict[str, int] = {}
    blocks: list[tuple[BlockDeclaration, int]] = []

    transformer = NetworkTransformer(k=None)
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        statement = _parse_line(_network_parser, transformer, line, line_number)

        if statement.kind == "net":
            if name is not None:
                raise DuplicateDefinitionError("net", line_number, f"Line {line_number}: second `net` declaration")
            name, k = statement.payload
            if not 2 <= k <= settings.MAX_DOMAIN_SIZE:
                raise DomainSizeError(f"Line {line_number}: k={k} outside [2, {settings.MAX_DOMAIN_SIZE}]", k, line_number)
            transformer.k = k
            continue

        if name is None:
            raise DSLSyntaxError(f"Line {line_number}: expected `net <name> k=<int>` first", line_number, 1, line)

        if statement.kind == "controls":
            if controls_line is not None:
                raise DuplicateDefinitionError("controls", line_number)
            controls, controls_line = statement.payload[0], line_number
            seen: set[str] = set()
            for control in controls:
                _check_name(control, line_number)
                if control in seen:
                    raise DuplicateDefinitionError(control, line_number)
                seen.add(control)
        elif statement.kind == "update":
            node, expr = statement.payload
            _check_name(node, line_number)
            if node in updates:
                raise DuplicateDefinitionError(node, line_number, f"Line {line_number}: second update for '{node}'")
            _check_expression(expr, k, line_number)
            updates[node] = expr
            update_lines[node] = line_number
        elif statement.kind == "output":
            output, expr = statement.payload
            _check_name(output, line_number)
            if output in outputs:
                raise DuplicateDefinitionError(output, line_number)
            _check_expression(expr, k, line_number)
            outputs[output] = expr
            output_lines[output] = line_number
        elif statement.kind == "block":
            block_name, nodes, block_outputs = statement.payload
            blocks.append((BlockDeclaration(name=block_name, nodes=nodes, outputs=block_outputs), line_number))
        else:
            raise DSLSyntaxError(f"Line {line_number}: `expr` is not a network statement", line_number, 1, line)

    if name is None:
        raise DSLSyntaxError("Missing `net <name> k=<int>` declaration", 1, 1)
    if not updates:
        raise EmptyNetworkError(f"Network '{name}' declares no nodes")

    nodes = tuple(updates)
    _validate_references(nodes, controls, updates, update_lines, outputs, output_lines, controls_line)
    _validate_blocks(nodes, blocks)

    network = Network(
        name=name,
        k=k,
        nodes=nodes,
        controls=controls,
        updates=updates,
        outputs=outputs,
        blocks=tuple(block for block, _line in blocks),
    )
    logger.debug(f"Parsed network '{name}': n={network.n}, m={network.m}, p={network.p}, blocks={len(blocks)}")
    return network


def _validate_references(nodes, controls, updates, update_lines, outputs, output_lines, controls_line):
    node_set, control_set = set(nodes), set(controls)
    for control in controls:
        if control in node_set:
            raise DuplicateDefinitionError(control, controls_line, f"'{control}' is declared both as control and node")
    for output, line in output_lines.items():
        if output in node_set or output in control_set:
            raise DuplicateDefinitionError(output, line, f"Output name '{output}' clashes with a node or control")

    for node, expr in updates.items():
        for name in variables(expr):
            if name not in node_set and name not in control_set:
                raise UndeclaredIdentifierError(name, update_lines[node])
    for output, expr in outputs.items():
        for name in variables(expr):
            if name in control_set:
                raise UndeclaredIdentifierError(
                    name,
                    output_lines[output],
                    f"Line {output_lines[output]}: output '{output}' may only reference nodes, '{name}' is a control",
                )
            if name not in node_set:
                raise UndeclaredIdentifierError(name, output_lines[output])


def _validate_blocks(nodes, blocks: list[tuple[BlockDeclaration, int]]):
    node_set = set(nodes)
    names: set[str] = set()
    for block, line in blocks:
        if block.name in names:
            raise DuplicateDefinitionError(block.name, line)
        names.add(block.name)
        for node in block.nodes:
            if node not in node_set:
                raise UndeclaredIdentifierError(node, line)
        if len(set(block.nodes)) != len(block.nodes):
            raise DuplicateDefinitionError(block.name, line, f"Line {line}: block '{block.name}' lists a node twice")
        for output in block.outputs or ():
            if output not in block.nodes:
                raise UndeclaredIdentifierError(
                    output,
                    line,
                    f"Line {line}: block output '{output}' is not a node of block '{block.name}'",
                )


def parse_expression(text: str, k: int, names: tuple[str, ...] | None = None) -> Expr:
    """Parse a single expression; names, when given, restricts the variables"""
    transformer = NetworkTransformer(k=k)
    statement = _parse_line(_network_parser, transformer, f"expr {text.strip()}", 1)
    if statement.kind != "expr":
        raise DSLSyntaxError(f"Not an expression: {text!r}", 1, 1, text)
    expr = statement.payload[0]
    _check_expression(expr, k, 1)
    if names is not None:
        for name in variables(expr):
            if name not in names:
                raise UndeclaredIdentifierError(name)
    return expr


def parse_transition_system(text: str) -> RawTransitionSpec:
    """
    Parse the transition-system DSL

    Args:
        text: DSL source with `states`, `obs`, optional `inputs`, `trans` and `label` lines

    Returns:
        Validated RawTransitionSpec; absent (state, input) pairs have no successors
    """
    transformer = TransitionTransformer()
    name = "ts"
    sections: dict[str, tuple[tuple[str, ...], int]] = {}
    transitions: dict[tuple[str, str | None], tuple[tuple[str, ...], int]] = {}
    labels: dict[str, tuple[str, int]] = {}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        statement = _parse_line(_transition_parser, transformer, line, line_number)

        if statement.kind == "ts":
            name = statement.payload[0]
        elif statement.kind in ("states", "inputs", "obs"):
            if statement.kind in sections:
                raise DuplicateDefinitionError(statement.kind, line_number)
            declared = statement.payload[0]
            if len(set(declared)) != len(declared):
                duplicate = next(item for item in declared if declared.count(item) > 1)
                raise DuplicateDefinitionError(duplicate, line_number)
            sections[statement.kind] = (declared, line_number)
        elif statement.kind == "trans":
            state, input_name, successors = statement.payload
            key = (state, input_name)
            if key in transitions:
                where = f"{state} {input_name}" if input_name else state
                raise DuplicateDefinitionError(where, line_number, f"Line {line_number}: second transition for ({where})")
            transitions[key] = (successors, line_number)
        else:
            state, observation = statement.payload
            if state in labels:
                raise DuplicateDefinitionError(state, line_number, f"Line {line_number}: second label for '{state}'")
            labels[state] = (observation, line_number)

    if "states" not in sections:
        raise DSLSyntaxError("Missing `states` declaration", 1, 1)
    if "obs" not in sections:
        raise DSLSyntaxError("Missing `obs` declaration", 1, 1)

    states = sections["states"][0]
    inputs = sections.get("inputs", ((), None))[0]
    observations = sections["obs"][0]
    state_set, input_set, obs_set = set(states), set(inputs), set(observations)

    for (state, input_name), (successors, line) in transitions.items():
        if state not in state_set:
            raise UndeclaredIdentifierError(state, line)
        if inputs and input_name is None:
            raise DSLSyntaxError(f"Line {line}: transition for '{state}' needs an input name", line, 1)
        if input_name is not None and input_name not in input_set:
            raise UndeclaredIdentifierError(input_name, line)
        for successor in successors:
            if successor not in state_set:
                raise UndeclaredIdentifierError(successor, line)
        if len(set(successors)) != len(successors):
            raise DuplicateDefinitionError(state, line, f"Line {line}: successor listed twice")

    for state, (observation, line) in labels.items():
        if state not in state_set:
            raise UndeclaredIdentifierError(state, line)
        if observation not in obs_set:
            raise UndeclaredIdentifierError(observation, line)
    unlabeled = [state for state in states if state not in labels]
    if unlabeled:
        raise InvalidInputError(f"State '{unlabeled[0]}' has no `label` line", identifier=unlabeled[0])

    spec = RawTransitionSpec(
        name=name,
        states=states,
        inputs=inputs,
        observations=observations,
        transitions=tuple(
            Transition(state=state, input=input_name, successors=successors)
            for (state, input_name), (successors, _line) in transitions.items()
        ),
        labels={state: observation for state, (observation, _line) in labels.items()},
    )
    logger.debug(f"Parsed transition system '{name}': |X|={len(states)}, |U|={len(inputs) or 1}, |O|={len(observations)}")
    return spec
