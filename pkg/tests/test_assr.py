"""Compilation into x(t+1) = L u x, y = H x"""

import itertools

import numpy as np
import pytest

from core.errors import InvalidInputError, SizeCapExceededError, UndeclaredIdentifierError
from services.assr import (
    Assr,
    AssrKind,
    compile_expr,
    compile_network,
    compile_raw_ts,
    decode_controls,
    decode_state,
    encode_controls,
    encode_state,
    operator_structure_matrix,
    projection_matrix,
)
from services.assr.compiler import STP_JOIN_LIMIT
from services.netdsl import Op, evaluate, parse_expression, parse_network, parse_transition_system
from services.stp import LogicalMatrix, identity, stp_chain, vector_index

SIX_NODES_TRANSITIONS = [
    35, 36, 39, 40, 34, 33, 38, 37,
    51, 52, 51, 52, 58, 57, 58, 57,
    33, 34, 37, 38, 36, 35, 40, 39,
    49, 50, 49, 50, 60, 59, 60, 59,
    19, 20, 23, 24, 18, 17, 22, 21,
    19, 20, 19, 20, 26, 25, 26, 25,
    17, 18, 21, 22, 20, 19, 24, 23,
    17, 18, 17, 18, 28, 27, 28, 27,
]


def assert_matches_evaluation(text: str, names: tuple[str, ...], k: int):
    expr = parse_expression(text, k)
    matrix = compile_expr(expr, names, k)
    assert matrix.shape == (k, k ** len(names))
    for values in itertools.product(range(1, k + 1), repeat=len(names)):
        column = vector_index(values, k)
        assert matrix.column(column) == evaluate(expr, dict(zip(names, values)), k), values


class TestStructureMatrices:
    def test_boolean_connectives(self):
        assert operator_structure_matrix(Op.AND, 2) == LogicalMatrix.delta(2, [1, 2, 2, 2])
        assert operator_structure_matrix(Op.OR, 2) == LogicalMatrix.delta(2, [1, 1, 1, 2])
        assert operator_structure_matrix(Op.IMPLIES, 2) == LogicalMatrix.delta(2, [1, 2, 1, 1])
        assert operator_structure_matrix(Op.IFF, 2) == LogicalMatrix.delta(2, [1, 2, 2, 1])
        assert operator_structure_matrix(Op.XOR, 2) == LogicalMatrix.delta(2, [2, 1, 1, 2])
        assert operator_structure_matrix("not", 2) == LogicalMatrix.delta(2, [2, 1])

    def test_lookup_by_name(self):
        assert operator_structure_matrix("and", 3) == operator_structure_matrix(Op.AND, 3)
        assert operator_structure_matrix("->", 3) == operator_structure_matrix(Op.IMPLIES, 3)

    def test_unknown_connective(self):
        with pytest.raises(InvalidInputError):
            operator_structure_matrix("nand", 2)


class TestCompileExpr:
    def test_projection(self):
        # P ⋉ x1 ⋉ x2 ⋉ x3 = x2
        p = projection_matrix(1, 3, 2)
        for a, b, c in itertools.product((1, 2), repeat=3):
            assert p.column(vector_index((a, b, c), 2)) == b

    def test_boolean(self):
        assert compile_expr(parse_expression("a & b", 2), ("a", "b"), 2) == LogicalMatrix.delta(2, [1, 2, 2, 2])
        assert compile_expr(parse_expression("b", 2), ("a", "b"), 2) == LogicalMatrix.delta(2, [1, 2, 1, 2])

    def test_repeated_variable(self):
        assert_matches_evaluation("a ^ a | !a", ("a",), 2)

    def test_against_evaluation(self):
        assert_matches_evaluation("(a -> b) <-> !(c ^ a)", ("a", "b", "c"), 2)
        assert_matches_evaluation("table[1,2,2,1](b, a) & true", ("a", "b"), 2)

    def test_multi_valued(self):
        assert_matches_evaluation("(a & !b) | (b <-> const[2])", ("a", "b"), 3)
        assert_matches_evaluation("a -> b ^ a", ("a", "b"), 4)

    def test_variable_order_matters(self):
        expr = parse_expression("a & !b", 2)
        assert compile_expr(expr, ("a", "b"), 2) != compile_expr(expr, ("b", "a"), 2)

    def test_wide_composites_use_column_join(self):
        names = tuple(f"x{i}" for i in range(1, 10))
        assert 2 ** len(names) > STP_JOIN_LIMIT
        assert_matches_evaluation("(x1 & x2) | (x3 ^ x9) | !(x5 -> x8)", names, 2)

    def test_unknown_variable(self):
        with pytest.raises(UndeclaredIdentifierError):
            compile_expr(parse_expression("a & c", 2), ("a", "b"), 2)


class TestCompileNetwork:
    def test_six_nodes(self, six_nodes):
        assr = compile_network(six_nodes)
        assert assr.kind == AssrKind.NETWORK
        assert assr.L.shape == (64, 64)
        assert assr.L.cols.tolist() == SIX_NODES_TRANSITIONS
        assert assr.H.cols.tolist() == [1, 2] * 32
        assert assr.autonomous

    def test_columns_follow_direct_evaluation(self, chain):
        network = chain(2)
        assr = compile_network(network)
        assert assr.L.shape == (8, 16)
        for u in (1, 2):
            for index in range(1, 9):
                state = decode_state(network, index)
                successor = {node: evaluate(network.updates[node], {**state, "u": u}, 2) for node in network.nodes}
                assert assr.successors(index, u) == {encode_state(network, successor)}

    def test_step_is_stp_chain(self, chain):
        network = chain(1)
        assr = compile_network(network)
        u, x = LogicalMatrix(2, [2]), LogicalMatrix(4, [3])
        assert stp_chain(assr.L, u, x) == LogicalMatrix(4, [next(iter(assr.successors(3, 2)))])

    def test_without_outputs_every_state_looks_alike(self):
        assr = compile_network(parse_network("net n k=2\nx1 <- !x1\nx2 <- x1\n"))
        assert assr.H.shape == (1, 4)
        assert assr.p_obs == 1

    def test_several_outputs(self):
        network = parse_network("net n k=2\nx1 <- x2\nx2 <- x1\noutput y1 = x1\noutput y2 = x1 & x2\n")
        assr = compile_network(network)
        assert assr.H.cols.tolist() == [1, 2, 4, 4]
        assert assr.observation_label(3) == "21"

    def test_size_cap(self, six_nodes, tcell):
        with pytest.raises(SizeCapExceededError) as exc:
            compile_network(six_nodes, size_cap=32)
        assert exc.value.columns == 64
        with pytest.raises(SizeCapExceededError):
            compile_network(tcell)


class TestCompileRawTs:
    def test_nondeterministic(self, two_inputs):
        assert two_inputs.kind == AssrKind.TRANSITION_SYSTEM
        assert two_inputs.n_states == 4
        assert two_inputs.m_inputs == 2
        assert two_inputs.H == LogicalMatrix.delta(3, [1, 2, 3, 2])
        assert two_inputs.L.column_sets() == [
            {2, 3}, {2, 3}, set(), {2, 4},
            set(), {4}, {2, 3}, set(),
        ]

    def test_logical_when_total_and_deterministic(self):
        spec = parse_transition_system("states a b\nobs O P\ntrans a -> {b}\ntrans b -> {a}\nlabel a = O\nlabel b = P\n")
        assr = compile_raw_ts(spec)
        assert isinstance(assr.L, LogicalMatrix)
        assert assr.L == LogicalMatrix.delta(2, [2, 1])

    def test_observation_labels(self, autonomous):
        assert [autonomous.observation_label(i) for i in (1, 2, 3)] == ["O1", "O2", "O3"]


class TestAssrModel:
    def test_shape_checks(self):
        with pytest.raises(InvalidInputError):
            Assr(L=identity(3), H=LogicalMatrix.delta(1, [1, 1]))

    def test_successor_input_range(self, two_inputs):
        with pytest.raises(InvalidInputError):
            two_inputs.successors(1, 3)


class TestEncoding:
    def test_state_round_trip(self, six_nodes):
        assignment = {"x1": 2, "x2": 1, "x3": 1, "x4": 1, "x5": 1, "x6": 2}
        assert encode_state(six_nodes, assignment) == 34
        assert decode_state(six_nodes, 34) == assignment

    def test_controls(self, chain):
        network = chain(1)
        assert encode_controls(network, {"u": 2}) == 2
        assert decode_controls(network, 1) == {"u": 1}

    def test_autonomous_controls(self, six_nodes):
        assert encode_controls(six_nodes) == 1
        assert decode_controls(six_nodes, 1) == {}

    def test_incomplete_assignment(self, six_nodes):
        with pytest.raises(InvalidInputError):
            encode_state(six_nodes, {"x1": 1})
        with pytest.raises(UndeclaredIdentifierError):
            encode_state(six_nodes, {"x7": 1})
