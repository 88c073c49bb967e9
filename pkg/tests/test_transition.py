"""Quotients, bisimulation and output languages"""

import pytest

from core.errors import InvalidInputError
from services.aggregation import extract_block
from services.assr import compile_network, compile_raw_ts
from services.netdsl import parse_network, parse_transition_system
from services.stp import identity
from services.transition import (
    BisimulationVerdict,
    OutputWord,
    check_bisimulation,
    check_language_relation,
    concretize,
    format_word,
    has_dead_ends,
    is_deterministic,
    output_language,
    output_partition,
    quotient,
    quotient_by_definition,
    step,
    successor_table,
)


@pytest.fixture
def swap_pair():
    """Two states with one observation swapping forever"""
    text = "states a b\nobs O\ntrans a -> {b}\ntrans b -> {a}\nlabel a = O\nlabel b = O\n"
    return compile_raw_ts(parse_transition_system(text))


@pytest.fixture
def chain_block(chain):
    network = chain(2)
    return compile_network(extract_block(network, network.block("B")))


class TestDynamics:
    def test_successor_table(self, two_inputs):
        table = successor_table(two_inputs)
        assert table[0][0] == {2, 3}
        assert table[1][1] == {4}
        assert table[0][2] == set()

    def test_step_unions_successors(self, two_inputs):
        assert step(two_inputs, {1, 4}, 1) == {2, 3, 4}
        assert step(two_inputs, {1}, 2) == set()

    def test_step_range_checks(self, two_inputs):
        with pytest.raises(InvalidInputError):
            step(two_inputs, {1}, 3)
        with pytest.raises(InvalidInputError):
            step(two_inputs, {5}, 1)

    def test_dead_ends(self, two_inputs, six_nodes):
        assert has_dead_ends(two_inputs)
        assert not has_dead_ends(compile_network(six_nodes))


class TestQuotient:
    def test_partition(self, two_inputs):
        partition = output_partition(two_inputs)
        assert partition.classes == ((1,), (2, 4), (3,))
        assert partition.class_of(4) == 2
        assert concretize(partition, 2) == {2, 4}

    def test_two_inputs(self, two_inputs):
        q = quotient(two_inputs)
        assert q.n_states == 3
        assert q.m_inputs == 2
        assert q.H == identity(3)
        assert q.state_names == ("O1", "O2", "O3")
        assert q.L.column_sets() == [{2, 3}, {2, 3}, set(), set(), {2}, {2, 3}]

    def test_autonomous(self, autonomous):
        q = quotient(autonomous)
        assert q.L.column_sets() == [{1, 2, 3}, {1}, {1}]
        assert not is_deterministic(q)

    def test_matches_set_definition(self, two_inputs, dead_ends, autonomous, six_nodes, chain):
        systems = [two_inputs, dead_ends, autonomous, compile_network(six_nodes), compile_network(chain(2))]
        for assr in systems:
            assert quotient(assr).L == quotient_by_definition(assr).L, assr.name

    def test_single_class_collapses(self, swap_pair):
        q = quotient(swap_pair)
        assert q.n_states == 1
        assert q.L == identity(1)

    def test_network_quotient_names(self):
        network = parse_network("net n k=2\nx1 <- x2\nx2 <- x1\noutput y1 = x1\noutput y2 = x2\n")
        q = quotient(compile_network(network))
        assert q.state_names == ("11", "12", "21", "22")


class TestBisimulation:
    def test_two_inputs_witness(self, two_inputs):
        report = check_bisimulation(two_inputs)
        assert report.verdict == BisimulationVerdict.NOT_BISIMULATION
        assert not report.is_bisimulation
        witness = report.witness
        assert (witness.first, witness.second, witness.input) == (2, 4, 1)
        assert witness.first_classes == (2, 3)
        assert witness.second_classes == (2,)

    def test_dead_ends_witness(self, dead_ends):
        report = check_bisimulation(dead_ends)
        assert report.verdict == BisimulationVerdict.NOT_BISIMULATION
        assert (report.witness.first, report.witness.second, report.witness.input) == (1, 2, 1)
        assert not report.deterministic
        assert report.clause is None

    def test_autonomous(self, autonomous):
        report = check_bisimulation(autonomous)
        assert not report.is_bisimulation
        assert report.witness.second_classes == (3,)

    def test_deterministic_quotient(self, swap_pair):
        report = check_bisimulation(swap_pair)
        assert report.is_bisimulation
        assert report.witness is None
        assert report.clause == "i"

    def test_deterministic_system_with_nondeterministic_quotient(self, chain_block):
        report = check_bisimulation(chain_block)
        assert report.deterministic
        assert not report.quotient_deterministic
        assert report.clause == "ii"
        assert report.verdict == BisimulationVerdict.NOT_BISIMULATION


class TestOutputLanguage:
    def test_horizon_zero(self, two_inputs):
        language = output_language(two_inputs, [1, 2, 3, 4], 0)
        assert language.output_sequences() == {(1,), (2,), (3,)}
        assert not language.partial

    def test_dead_end_truncates(self, two_inputs):
        language = output_language(two_inputs, [3], 1)
        assert language.truncated_words == {OutputWord(outputs=(3,), truncated=True)}
        assert language.full_words == {
            OutputWord(inputs=(2,), outputs=(3, 2)),
            OutputWord(inputs=(2,), outputs=(3, 3)),
        }

    def test_cap_marks_partial(self, two_inputs, caplog):
        language = output_language(two_inputs, [1, 2, 3, 4], 3, cap=2)
        assert language.partial
        assert len(language.full_words) <= 2
        assert "partial" in caplog.text

    def test_argument_checks(self, two_inputs):
        with pytest.raises(InvalidInputError):
            output_language(two_inputs, [1], -1)
        with pytest.raises(InvalidInputError):
            output_language(two_inputs, [9], 1)

    def test_prefix(self):
        prefix = OutputWord(inputs=(1,), outputs=(3, 1), truncated=True)
        assert prefix.is_prefix_of(OutputWord(inputs=(1, 1), outputs=(3, 1, 2)))
        assert not prefix.is_prefix_of(OutputWord(inputs=(2, 1), outputs=(3, 1, 2)))

    def test_format_word(self, autonomous):
        assert format_word(autonomous, OutputWord(inputs=(1, 1), outputs=(3, 1, 2))) == "(O3,O1,O2)"
        assert format_word(autonomous, OutputWord(outputs=(3,), truncated=True)) == "(O3,...)"


class TestLanguageRelation:
    def test_quotient_adds_words(self, autonomous):
        report = check_language_relation(autonomous, 2)
        assert report.inclusion
        assert not report.equality
        third = report.verdict_for(3)
        assert third.label == "O3"
        assert not third.equality
        extra = [format_word(autonomous, word) for word in third.extra]
        assert "(O3,O1,O2)" in extra
        assert "(O3,O1,O3)" not in extra

    def test_inclusion_with_dead_ends(self, two_inputs, dead_ends):
        assert check_language_relation(two_inputs, 3).inclusion
        assert check_language_relation(dead_ends, 3).inclusion

    def test_bisimulation_gives_equality(self, swap_pair):
        assert check_language_relation(swap_pair, 4).equality

    def test_equality_fails_for_aggregated_chain(self, chain_block):
        report = check_language_relation(chain_block, 2)
        assert report.inclusion
        assert not report.equality

    def test_empty_classes_skipped(self):
        network = parse_network("net n k=2\nx1 <- x1\noutput y = x1 | !x1\n")
        report = check_language_relation(compile_network(network), 2)
        assert report.skipped_classes == (2,)
        assert [verdict.class_index for verdict in report.classes] == [1]
