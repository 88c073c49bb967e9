"""Block extraction, block quotients, assembly and simulation"""

import logging
from fractions import Fraction

import numpy as np
import pytest

from core.errors import AggregationError, DeadColumnError, InvalidInputError, UndeclaredIdentifierError
from services.aggregation import (
    SimulationMode,
    SourceKind,
    assemble_aggregated,
    block_count_matrix,
    block_io,
    block_simulation,
    draw_row,
    extract_block,
    is_aggregateable,
    is_output_decoupled,
    make_rng,
    project_initial,
    realization_probability,
    render_block_diagram,
    render_network_graph,
    resolve,
    sample_realization,
    simulate_aggregated,
    support_matches,
)
from services.assr import compile_network
from services.netdsl import BlockDeclaration, Var, build_network_graph, parse_network, variables
from services.stp import CountMatrix, LogicalMatrix

SIX_NODES_L = [2, 4, 1, 3, 10, 10, 13, 13, 1, 3, 2, 4, 9, 9, 14, 14, 10, 12, 9, 11, 10, 10, 13, 13, 9, 11, 10, 12, 9, 9, 14, 14]


def block_assr(network, name):
    return compile_network(extract_block(network, network.block(name)))


class TestBlockInterface:
    def test_six_nodes_block(self, six_nodes):
        graph = build_network_graph(six_nodes)
        io = block_io(graph, ["x2", "x3", "x4", "x5"])
        assert io.inputs == ("x1",)
        assert io.outputs == ("x4",)
        assert io.controls == ()
        assert is_aggregateable(graph, ["x2", "x3", "x4", "x5"])

    def test_input_feeding_output_directly(self, six_nodes):
        graph = build_network_graph(six_nodes)
        io = block_io(graph, ["x2"])
        assert io.inputs == ("x1", "x3")
        assert io.outputs == ("x2",)
        assert not is_aggregateable(graph, ["x2"])

    def test_whole_network(self):
        network = parse_network("net n k=2\ncontrols u\nx1 <- x2 & u\nx2 <- x1\n")
        io = block_io(build_network_graph(network), network.nodes)
        assert io.inputs == ()
        assert io.outputs == ()
        assert io.controls == ("u",)

    def test_unknown_node(self, six_nodes):
        with pytest.raises(UndeclaredIdentifierError):
            block_io(build_network_graph(six_nodes), ["x9"])

    def test_output_decoupling(self, six_nodes):
        assert is_output_decoupled(six_nodes, ["x2", "x3", "x4", "x5"])
        assert not is_output_decoupled(six_nodes, ["x5", "x6"], outputs=["x5"])

    def test_resolve_defaults_to_formal_outputs(self, six_nodes):
        block = resolve(six_nodes, BlockDeclaration(name="B", nodes=("x5", "x2")))
        assert block.nodes == ("x2", "x5")
        assert block.outputs == block.formal_outputs == ("x5",)

    def test_tcell_blocks(self, tcell):
        graph = build_network_graph(tcell)
        expected = {
            "S1": ((), ("u1", "u2", "u3"), True),
            "S2": (("x20", "x37"), (), False),
            "S3": (("x19", "x25"), (), True),
            "S4": (("x25",), (), True),
            "S5": (("x17", "x29"), (), True),
        }
        for name, (inputs, controls, aggregateable) in expected.items():
            block = resolve(tcell, tcell.block(name), graph)
            assert block.inputs == inputs, name
            assert block.controls == controls, name
            assert is_aggregateable(graph, block.nodes) == aggregateable, name
            assert is_output_decoupled(tcell, block.nodes, block.outputs), name


class TestExtractBlock:
    def test_renaming(self, six_nodes):
        extracted = extract_block(six_nodes, six_nodes.block("A"))
        assert extracted.name == "six_nodes.A"
        assert extracted.nodes == ("z1", "z2", "z3", "z4")
        assert extracted.controls == ("v1",)
        assert extracted.outputs == {"q1": Var("z3")}

    def test_controls_come_before_block_inputs(self, chain):
        network = chain(2)
        extracted = extract_block(network, network.block("B"))
        assert extracted.controls == ("u", "v1")

    def test_block_matrices(self, six_nodes):
        assr = block_assr(six_nodes, "A")
        assert assr.L == LogicalMatrix.delta(16, SIX_NODES_L)
        assert assr.H.cols.tolist() == [1, 1, 2, 2] * 4

    def test_not_aggregateable_is_logged(self, chain, caplog):
        network = chain(1)
        with caplog.at_level(logging.WARNING):
            extract_block(network, network.block("B"))
        assert "not aggregate-able" in caplog.text


class TestBlockSimulation:
    def test_six_nodes_quotient_is_full(self, six_nodes):
        bq = block_simulation(block_assr(six_nodes, "A"))
        assert bq.boolean_sim.shape == (2, 4)
        assert bq.boolean_sim.data.all()
        assert not bq.deterministic
        assert bq.logical is None
        assert (bq.xi, bq.eta) == (2, 4)

    def test_single_node_chain_is_deterministic(self, chain):
        bq = block_simulation(block_assr(chain(1), "B"))
        assert bq.deterministic
        assert bq.logical == LogicalMatrix.delta(2, [2, 1, 1, 2, 1, 2, 2, 1])

    def test_longer_chains_lose_determinism(self, chain):
        for mu in (2, 3):
            bq = block_simulation(block_assr(chain(mu), "B"))
            assert bq.boolean_sim.data.all(), mu

    def test_counts_sum_to_class_sizes(self, six_nodes):
        count = block_count_matrix(block_assr(six_nodes, "A"))
        # each output class holds 8 of the 16 block states
        assert count.column_sums().tolist() == [8, 8, 8, 8]

    def test_support_matches_boolean_quotient(self, six_nodes, chain):
        assert support_matches(block_simulation(block_assr(six_nodes, "A")))
        assert support_matches(block_simulation(block_assr(chain(3), "B")))

    def test_tcell_counts(self, tcell_aggregated):
        first, second = tcell_aggregated.blocks[0], tcell_aggregated.blocks[1]
        assert first.assr.L.cols[:3].tolist() == [22, 86, 22]
        assert first.assr.H.cols[:3].tolist() == [1, 2, 1]
        assert first.count.data[:, 0].tolist() == [4, 12, 4, 12]

        assert second.count.column_sums().tolist() == [32] * 16
        assert sorted(v for v in second.count.data[:, 0].tolist() if v) == [6, 26]
        assert second.prob.column(1)[second.count.data[:, 0].tolist().index(6)] == Fraction(3, 16)


class TestProbabilistic:
    COUNTS = CountMatrix(np.array([[6, 6, 6, 6], [2, 2, 2, 2]]))

    def test_realization_probability(self):
        assert realization_probability(self.COUNTS, [1, 1, 1, 1]) == Fraction(81, 256)
        assert realization_probability(self.COUNTS, [2, 1, 1, 1]) == Fraction(27, 256)

    def test_realization_probabilities_sum_to_one(self):
        total = sum(
            realization_probability(self.COUNTS, [a, b, c, d])
            for a in (1, 2)
            for b in (1, 2)
            for c in (1, 2)
            for d in (1, 2)
        )
        assert total == 1

    def test_realization_checks(self):
        with pytest.raises(InvalidInputError):
            realization_probability(self.COUNTS, [1, 1])
        with pytest.raises(DeadColumnError):
            realization_probability(CountMatrix(np.array([[1, 0]])), [1, 1])

    def test_draw_row_is_reproducible(self):
        first = [draw_row(self.COUNTS, 1, make_rng(42)) for _ in range(3)]
        second = [draw_row(self.COUNTS, 1, make_rng(42)) for _ in range(3)]
        assert first == second
        assert set(first) <= {1, 2}

    def test_draw_row_frequencies(self):
        rng = make_rng(7)
        draws = [draw_row(self.COUNTS, 2, rng) for _ in range(4000)]
        assert abs(draws.count(1) / len(draws) - 0.75) < 0.05

    def test_draw_never_picks_zero_rows(self):
        counts = CountMatrix(np.array([[0], [5], [0]]))
        rng = make_rng(1)
        assert {draw_row(counts, 1, rng) for _ in range(50)} == {2}

    def test_dead_column(self):
        with pytest.raises(DeadColumnError) as exc:
            draw_row(CountMatrix(np.array([[1, 0], [1, 0]])), 2, make_rng(0))
        assert exc.value.column == 2

    def test_sample_realization(self, six_nodes):
        bq = block_simulation(block_assr(six_nodes, "A"))
        realization = sample_realization(bq, seed=3)
        assert realization.shape == (2, 4)
        assert realization == sample_realization(bq, seed=3)
        support = bq.boolean_sim.column_sets()
        assert all(realization.column(j) in support[j - 1] for j in range(1, 5))


class TestAssembly:
    def test_six_nodes(self, six_nodes):
        agg = assemble_aggregated(six_nodes)
        assert agg.state_names == ("z1_1", "x1", "x6")
        assert agg.residual == ("x1", "x6")
        assert agg.renaming["x4"] == "z1_1"
        source = agg.source_of(1, 1)
        assert (source.kind, source.name, source.original) == (SourceKind.RESIDUAL, "x1", "x1")
        assert agg.output_binding("y") == "x6"
        assert variables(agg.residual_updates["x6"]) == ("z1_1", "x6")

    def test_tcell(self, tcell_aggregated):
        agg = tcell_aggregated
        assert agg.n == 11
        assert agg.m == 3
        assert agg.residual == ()
        wiring = {name: (source.name, source.original) for name, source in agg.wiring.items()}
        assert wiring == {
            "v2_1": ("z1_1", "x20"),
            "v2_2": ("z1_2", "x37"),
            "v3_1": ("z2_1", "x19"),
            "v3_2": ("z2_2", "x25"),
            "v4_1": ("z2_2", "x25"),
            "v5_1": ("z4_3", "x17"),
            "v5_2": ("z3_2", "x29"),
        }
        assert {agg.output_binding(y) for y in agg.outputs} == {"z5_1", "z5_2", "z3_1", "z4_2", "z4_1"}
        assert agg.graph.number_of_edges("S1", "S2") == 2

    def test_strict_refuses_non_aggregateable_blocks(self, tcell):
        with pytest.raises(AggregationError) as exc:
            assemble_aggregated(tcell, strict=True)
        assert exc.value.block == "S2"

    def test_overlapping_blocks(self, six_nodes):
        blocks = [
            BlockDeclaration(name="A", nodes=("x2", "x3")),
            BlockDeclaration(name="B", nodes=("x3", "x4")),
        ]
        with pytest.raises(AggregationError):
            assemble_aggregated(six_nodes, blocks)

    def test_output_reading_hidden_node(self, six_nodes):
        with pytest.raises(AggregationError) as exc:
            assemble_aggregated(six_nodes, [BlockDeclaration(name="C", nodes=("x4", "x6"), outputs=("x4",))])
        assert exc.value.identifier == "y"

    def test_block_input_from_hidden_node(self, six_nodes):
        blocks = [
            BlockDeclaration(name="P", nodes=("x2", "x3"), outputs=("x2",)),
            BlockDeclaration(name="Q", nodes=("x4", "x5")),
        ]
        with pytest.raises(AggregationError):
            assemble_aggregated(six_nodes, blocks)

    def test_no_blocks(self):
        with pytest.raises(AggregationError):
            assemble_aggregated(parse_network("net n k=2\nx1 <- x1\n"))

    def test_renderings(self, six_nodes, tcell_aggregated):
        dot = render_network_graph(build_network_graph(six_nodes), six_nodes.blocks)
        assert dot.startswith("digraph")
        assert '"x1" -> "x2"' in dot
        diagram = render_block_diagram(tcell_aggregated)
        assert diagram.startswith("digraph")
        assert "S5" in diagram


class TestSimulation:
    def test_project_initial(self, six_nodes):
        agg = assemble_aggregated(six_nodes)
        values = project_initial(agg, {"x4": 2, "x2": 2, "x6": 2})
        assert values == {"z1_1": 2, "x1": 1, "x6": 2}
        assert project_initial(agg, {"z1_1": 2})["z1_1"] == 2
        with pytest.raises(UndeclaredIdentifierError):
            project_initial(agg, {"x9": 1})
        with pytest.raises(InvalidInputError):
            project_initial(agg, {"x1": 3})

    def test_nondeterministic_words(self, six_nodes):
        agg = assemble_aggregated(six_nodes)
        result = simulate_aggregated(agg, [(), ()])
        assert result.mode == SimulationMode.BOOLEAN_NONDET
        assert result.words == (((1,), (1,), (1,)), ((1,), (1,), (2,)))
        assert not result.partial

    def test_probabilistic_is_reproducible(self, six_nodes):
        agg = assemble_aggregated(six_nodes)
        first = simulate_aggregated(agg, [()] * 5, seed=11, mode="probabilistic")
        second = simulate_aggregated(agg, [()] * 5, seed=11, mode="probabilistic")
        assert first == second
        assert len(first.words[0]) == 6
        assert len(first.states) == 6

    def test_probabilistic_word_is_a_nondeterministic_word(self, chain):
        agg = assemble_aggregated(chain(2))
        inputs = [(1,), (2,), (1,)]
        sampled = simulate_aggregated(agg, inputs, seed=5, mode=SimulationMode.PROBABILISTIC)
        possible = simulate_aggregated(agg, inputs)
        assert sampled.words[0] in possible.words

    def test_cap(self, chain):
        agg = assemble_aggregated(chain(3))
        result = simulate_aggregated(agg, [(1,)] * 4, cap=1)
        assert result.partial
        assert len(result.words) == 1

    def test_control_checks(self, chain):
        agg = assemble_aggregated(chain(2))
        with pytest.raises(InvalidInputError):
            simulate_aggregated(agg, [(1, 1)])
        with pytest.raises(InvalidInputError):
            simulate_aggregated(agg, [(3,)])

    def test_tcell(self, tcell_aggregated):
        inputs = [(1, 1, 1)] * 3
        result = simulate_aggregated(tcell_aggregated, inputs, seed=2, mode="probabilistic")
        assert len(result.words[0]) == 4
        assert all(len(letter) == 5 for letter in result.words[0])
