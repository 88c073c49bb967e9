from pathlib import Path

import pytest

from services.aggregation import assemble_aggregated
from services.assr import compile_raw_ts
from services.netdsl import parse_network, parse_transition_system

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def load_network(name: str):
    return parse_network((FIXTURES / name).read_text(encoding="utf-8"))


def load_ts(name: str):
    return compile_raw_ts(parse_transition_system((FIXTURES / name).read_text(encoding="utf-8")))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def two_inputs():
    return load_ts("two_inputs.ts")


@pytest.fixture
def dead_ends():
    return load_ts("dead_ends.ts")


@pytest.fixture
def autonomous():
    return load_ts("autonomous.ts")


@pytest.fixture
def six_nodes():
    return load_network("six_nodes.net")


@pytest.fixture
def chain():
    def build(mu: int):
        return load_network(f"chain_mu{mu}.net")

    return build


@pytest.fixture(scope="session")
def tcell():
    return load_network("tcell.net")


@pytest.fixture(scope="session")
def tcell_aggregated(tcell):
    return assemble_aggregated(tcell)
