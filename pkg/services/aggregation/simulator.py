"""Synchronous simulation of an aggregated network.

Every block reads its block inputs from the previous step's values of their
sources, so all blocks and residual nodes update simultaneously.
"""

import itertools
import logging
from typing import Mapping, Sequence

from numpy.random import Generator

from core.config import settings
from core.errors import DeadColumnError, InvalidInputError, UndeclaredIdentifierError
from services.netdsl import evaluate
from services.stp import index_values, vector_index

from .models import AggregatedNetwork, BlockQuotient, SimulationMode, SimulationResult
from .probabilistic import draw_row, make_rng

logger = logging.getLogger(__name__)

State = tuple[int, ...]
Letter = tuple[int, ...]


def project_initial(agg: AggregatedNetwork, assignment: Mapping[str, int]) -> dict[str, int]:
    """Aggregated initial state from values keyed by original or aggregated node names.

    Nodes hidden inside a block are ignored; unset aggregated nodes default to 1.
    """
    names = set(agg.state_names)
    values = {name: 1 for name in agg.state_names}
    for name, value in assignment.items():
        if name in agg.renaming:
            target = agg.renaming[name]
        elif name in names:
            target = name
        elif any(name in bq.block.nodes for bq in agg.blocks):
            continue
        else:
            raise UndeclaredIdentifierError(name, message=f"'{name}' is not a node of '{agg.name}'")
        if not 1 <= value <= agg.k:
            raise InvalidInputError(f"Initial value {value} of '{name}' outside [1, {agg.k}]")
        values[target] = value
    return values


def _block_column(agg: AggregatedNetwork, index: int, bq: BlockQuotient, values: Mapping[str, int], controls: Mapping[str, int]) -> int:
    block = bq.block
    composite = [controls[name] for name in block.controls]
    composite += [values[agg.source_of(index, j).name] for j in range(1, block.alpha + 1)]
    composite += [values[agg.block_state_name(index, j)] for j in range(1, block.beta + 1)]
    return vector_index(composite, agg.k)


def _block_successors(agg: AggregatedNetwork, values: Mapping[str, int], controls: Mapping[str, int]) -> list[list[dict[str, int]]]:
    """Per block, the possible next values of its z nodes under the Boolean quotient"""
    options = []
    for index, bq in enumerate(agg.blocks, start=1):
        beta = bq.block.beta
        if beta == 0:
            continue
        column = _block_column(agg, index, bq, values, controls)
        choices = []
        for row in sorted(bq.boolean_sim.column_set(column)):
            digits = index_values(row, agg.k, beta)
            choices.append({agg.block_state_name(index, j): digits[j - 1] for j in range(1, beta + 1)})
        options.append(choices)
    return options


def _residual_step(agg: AggregatedNetwork, values: Mapping[str, int], controls: Mapping[str, int]) -> dict[str, int]:
    assignment = {**values, **controls}
    return {node: evaluate(agg.residual_updates[node], assignment, agg.k) for node in agg.residual}


def _letter(agg: AggregatedNetwork, values: Mapping[str, int]) -> Letter:
    return tuple(evaluate(expr, values, agg.k) for expr in agg.outputs.values())


def _controls_at(agg: AggregatedNetwork, values: Sequence[int]) -> dict[str, int]:
    if len(values) != agg.m:
        raise InvalidInputError(f"Expected {agg.m} control values per step, got {len(values)}")
    for value in values:
        if not 1 <= value <= agg.k:
            raise InvalidInputError(f"Control value {value} outside [1, {agg.k}]")
    return dict(zip(agg.controls, values))


def _simulate_nondet(agg: AggregatedNetwork, inputs, initial: dict[str, int], cap: int) -> SimulationResult:
    names = agg.state_names
    start: State = tuple(initial[name] for name in names)
    frontier: dict[tuple[Letter, ...], set[State]] = {(_letter(agg, initial),): {start}}
    truncated: set[tuple[Letter, ...]] = set()
    partial = False

    for step_values in inputs:
        controls = _controls_at(agg, step_values)
        extended: dict[tuple[Letter, ...], set[State]] = {}
        for word, states in frontier.items():
            for state in states:
                values = dict(zip(names, state))
                options = _block_successors(agg, values, controls)
                if any(not choices for choices in options):
                    truncated.add(word)
                    continue
                residual = _residual_step(agg, values, controls)
                for combination in itertools.product(*options):
                    successor = dict(residual)
                    for part in combination:
                        successor.update(part)
                    extended.setdefault(word + (_letter(agg, successor),), set()).add(
                        tuple(successor[name] for name in names)
                    )

        if sum(len(states) for states in extended.values()) > cap:
            partial = True
            kept: dict[tuple[Letter, ...], set[State]] = {}
            budget = cap
            for word in sorted(extended):
                if budget <= 0:
                    break
                states = set(sorted(extended[word])[:budget])
                kept[word] = states
                budget -= len(states)
            extended = kept
            logger.warning(f"Simulation of '{agg.name}' reached the cap of {cap} states; result is partial")
        frontier = extended

    return SimulationResult(
        mode=SimulationMode.BOOLEAN_NONDET,
        horizon=len(inputs),
        words=tuple(sorted(frontier)),
        truncated=tuple(sorted(truncated)),
        partial=partial,
    )


def _simulate_probabilistic(agg: AggregatedNetwork, inputs, initial: dict[str, int], rng: Generator, seed) -> SimulationResult:
    values = dict(initial)
    word = [_letter(agg, values)]
    states = [dict(values)]
    for step_values in inputs:
        controls = _controls_at(agg, step_values)
        successor = _residual_step(agg, values, controls)
        # fixed draw order: blocks in declaration order
        for index, bq in enumerate(agg.blocks, start=1):
            beta = bq.block.beta
            if beta == 0:
                continue
            column = _block_column(agg, index, bq, values, controls)
            try:
                row = draw_row(bq.count, column, rng)
            except DeadColumnError as exc:
                raise DeadColumnError(column, f"Block '{bq.block.name}' has no transitions in column {column}") from exc
            digits = index_values(row, agg.k, beta)
            successor.update({agg.block_state_name(index, j): digits[j - 1] for j in range(1, beta + 1)})
        values = successor
        word.append(_letter(agg, values))
        states.append(dict(values))

    return SimulationResult(
        mode=SimulationMode.PROBABILISTIC,
        horizon=len(inputs),
        seed=seed,
        words=(tuple(word),),
        states=tuple(states),
    )


def simulate_aggregated(
    agg: AggregatedNetwork,
    inputs: Sequence[Sequence[int]],
    initial: Mapping[str, int] | None = None,
    seed: int | None = None,
    mode: SimulationMode | str = SimulationMode.BOOLEAN_NONDET,
    cap: int | None = None,
) -> SimulationResult:
    """
    Output words of the aggregated network for the control sequence `inputs`

    Args:
        agg: aggregated network
        inputs: one tuple of control values per step (empty tuples when autonomous)
        initial: initial values by original or aggregated node name (default all 1)
        seed: PCG64 seed for probabilistic mode (default settings.DEFAULT_SEED)
        mode: boolean-nondet returns every reachable output word, probabilistic
            samples one trajectory
        cap: largest number of tracked states in boolean-nondet mode

    Returns:
        SimulationResult with words of length len(inputs) + 1
    """
    mode = SimulationMode(mode)
    inputs = [tuple(step_values) for step_values in inputs]
    start = project_initial(agg, initial or {})
    if mode == SimulationMode.BOOLEAN_NONDET:
        return _simulate_nondet(agg, inputs, start, cap or settings.SIMULATION_CAP)

    seed = settings.DEFAULT_SEED if seed is None else seed
    return _simulate_probabilistic(agg, inputs, start, make_rng(seed), seed)
