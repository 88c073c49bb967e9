"""Expression AST and parsed network / transition-system models"""

from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class Op(str, Enum):
    AND = "&"
    OR = "|"
    IMPLIES = "->"
    IFF = "<->"
    XOR = "^"


class Expr:
    """Base class of expression nodes"""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Const(Expr):
    # delta_k^index
    index: int


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: Op
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Table(Expr):
    """Truth-table literal; entries are delta indices in composite order of args"""

    entries: tuple[int, ...]
    args: tuple[Expr, ...]


def variables(expr: Expr) -> tuple[str, ...]:
    """Distinct variable names in order of first occurrence"""
    seen: dict[str, None] = {}

    def walk(node: Expr):
        if isinstance(node, Var):
            seen.setdefault(node.name, None)
        elif isinstance(node, Not):
            walk(node.operand)
        elif isinstance(node, BinOp):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Table):
            for arg in node.args:
                walk(arg)

    walk(expr)
    return tuple(seen)


def rename(expr: Expr, mapping: dict[str, str]) -> Expr:
    """Copy of expr with variables renamed (names missing from mapping are kept)"""
    if isinstance(expr, Var):
        return Var(mapping.get(expr.name, expr.name))
    if isinstance(expr, Not):
        return Not(rename(expr.operand, mapping))
    if isinstance(expr, BinOp):
        return BinOp(expr.op, rename(expr.left, mapping), rename(expr.right, mapping))
    if isinstance(expr, Table):
        return Table(expr.entries, tuple(rename(arg, mapping) for arg in expr.args))
    return expr


class BlockDeclaration(BaseModel):
    """`block <name> = {...} outputs {...}`; outputs None means "use the formal outputs"."""

    model_config = ConfigDict(frozen=True)

    name: str
    nodes: tuple[str, ...]
    outputs: tuple[str, ...] | None = None


class Network(BaseModel):
    """k-valued network: x_i(t+1) = f_i(x(t), u(t)), y_j(t) = h_j(x(t))"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    k: int = Field(..., ge=2)
    nodes: tuple[str, ...]
    controls: tuple[str, ...] = ()
    updates: dict[str, Expr]
    outputs: dict[str, Expr] = Field(default_factory=dict)
    blocks: tuple[BlockDeclaration, ...] = ()

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.controls)

    @property
    def p(self) -> int:
        return len(self.outputs)

    def block(self, name: str) -> BlockDeclaration:
        for declaration in self.blocks:
            if declaration.name == name:
                return declaration
        raise KeyError(name)


class Transition(BaseModel):
    model_config = ConfigDict(frozen=True)

    state: str
    input: str | None = None
    successors: tuple[str, ...]


class RawTransitionSpec(BaseModel):
    """Transition system (X, U, Σ, O, h); no inputs means one implicit input"""

    model_config = ConfigDict(frozen=True)

    name: str = "ts"
    states: tuple[str, ...]
    inputs: tuple[str, ...] = ()
    observations: tuple[str, ...]
    transitions: tuple[Transition, ...] = ()
    labels: dict[str, str]

    @property
    def autonomous(self) -> bool:
        return not self.inputs

    def successors(self, state: str, input: str | None = None) -> frozenset[str]:
        for transition in self.transitions:
            if transition.state == state and transition.input == input:
                return frozenset(transition.successors)
        return frozenset()
