"""Algebraic state-space representation x(t+1) = L ⋉ u(t) ⋉ x(t), y(t) = H ⋉ x(t)"""

from dataclasses import dataclass
from enum import Enum

from core.errors import DimensionMismatchError, InvalidInputError
from services.stp import BooleanMatrix, LogicalMatrix, index_values


class AssrKind(str, Enum):
    NETWORK = "network"
    TRANSITION_SYSTEM = "transition_system"
    QUOTIENT = "quotient"


@dataclass(frozen=True, eq=False)
class Assr:
    """ASSR with the control factor first.

    For a compiled network (k set) state_names are the node variables and
    input_names the controls; otherwise they name the states and inputs of a
    transition system. Column (j, i) of L, i.e. index (j-1)*n_states + i,
    holds the successors of state i under input j.
    """

    L: LogicalMatrix | BooleanMatrix
    H: LogicalMatrix
    kind: AssrKind = AssrKind.TRANSITION_SYSTEM
    k: int | None = None
    state_names: tuple[str, ...] = ()
    input_names: tuple[str, ...] = ()
    observation_names: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        n = self.H.n_cols
        if self.L.rows != n:
            raise DimensionMismatchError("assr", self.L.shape, self.H.shape)
        if n == 0 or self.L.n_cols % n:
            raise InvalidInputError(f"L has {self.L.n_cols} columns, not a multiple of {n} states")

    @property
    def n_states(self) -> int:
        return self.H.n_cols

    @property
    def m_inputs(self) -> int:
        return self.L.n_cols // self.n_states

    @property
    def p_obs(self) -> int:
        return self.H.rows

    @property
    def autonomous(self) -> bool:
        return self.m_inputs == 1

    def column_index(self, state: int, input: int = 1) -> int:
        """1-based column of L for (input, state)"""
        return (input - 1) * self.n_states + state

    def successors(self, state: int, input: int = 1) -> frozenset[int]:
        """Σ(state, input) as 1-based state indices"""
        if not 1 <= input <= self.m_inputs:
            raise InvalidInputError(f"Input {input} outside [1, {self.m_inputs}]")
        column = self.column_index(state, input)
        if isinstance(self.L, LogicalMatrix):
            return frozenset({self.L.column(column)})
        return self.L.column_set(column)

    def observation(self, state: int) -> int:
        return self.H.column(state)

    def observation_label(self, observation: int) -> str:
        """Name of an observation; network outputs read as one digit per output (e.g. "12")"""
        if len(self.observation_names) == self.p_obs:
            return self.observation_names[observation - 1]
        if self.k and self.observation_names:
            return "".join(str(v) for v in index_values(observation, self.k, len(self.observation_names)))
        return str(observation)
