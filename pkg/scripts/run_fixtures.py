"""
Run the bundled fixtures end to end and print what each one shows.

Transition systems get a bisimulation verdict and an output-language
comparison; networks with declared blocks are aggregated and their block
quotients summarized.

Run: python scripts/run_fixtures.py

Optional args:
  --fixtures tcell,six_nodes   # Comma-separated fixture stems (default: all)
  --horizon 3                  # Horizon for the language comparison
  --seed 7                     # Seed for one probabilistic trajectory per network
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.config import settings
from core.errors import FVNError
from services.aggregation import assemble_aggregated, simulate_aggregated, support_matches
from services.assr import compile_network, compile_raw_ts
from services.netdsl import Network, parse_network, parse_transition_system
from services.transition import check_bisimulation, check_language_relation, format_word

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def report_transition_system(path: str, horizon: int):
    with open(path, encoding="utf-8") as handle:
        assr = compile_raw_ts(parse_transition_system(handle.read()))

    bisimulation = check_bisimulation(assr)
    print(f"  States: {assr.n_states}, inputs: {assr.m_inputs}, observations: {assr.p_obs}")
    print(f"  Bisimulation: {bisimulation.verdict.value} (clause: {bisimulation.clause or '-'})")
    if bisimulation.witness:
        w = bisimulation.witness
        print(f"    x{w.first} and x{w.second} split under input {w.input}: {w.first_classes} vs {w.second_classes}")

    language = check_language_relation(assr, horizon)
    print(f"  Languages at horizon {horizon}: inclusion={language.inclusion}, equality={language.equality}")
    for verdict in language.classes:
        if verdict.extra:
            words = ", ".join(format_word(assr, word) for word in verdict.extra[:5])
            print(f"    {verdict.label}: quotient adds {words}")


def report_network(path: str, horizon: int, seed: int):
    with open(path, encoding="utf-8") as handle:
        network: Network = parse_network(handle.read())

    print(f"  Nodes: {network.n}, controls: {network.m}, outputs: {network.p}, blocks: {len(network.blocks)}")
    if not network.blocks:
        assr = compile_network(network)
        print(f"  Bisimulation: {check_bisimulation(assr).verdict.value}")
        return

    try:
        compile_network(network)
        print("  Whole network compiles within the size cap")
    except FVNError as e:
        print(f"  Whole network: {e.message.splitlines()[0]}")

    agg = assemble_aggregated(network)
    for bq in agg.blocks:
        kind = "deterministic" if bq.deterministic else "non-deterministic"
        print(
            f"  Block {bq.block.name}: inputs={list(bq.block.inputs)} outputs={list(bq.block.outputs)} "
            f"quotient {bq.xi}x{bq.eta} {kind}, support matches: {support_matches(bq)}"
        )
    print(f"  Aggregated network: {agg.n} state nodes {list(agg.state_names)}")

    inputs = [tuple(1 for _ in agg.controls)] * horizon
    result = simulate_aggregated(agg, inputs, seed=seed, mode="probabilistic")
    print(f"  Sampled output word (seed {seed}): {[list(letter) for letter in result.words[0]]}")


def main():
    parser = argparse.ArgumentParser(description="Run the bundled fixtures")
    parser.add_argument("--fixtures", type=str, default=None, help="Comma-separated fixture stems")
    parser.add_argument("--horizon", type=int, default=settings.DEFAULT_HORIZON)
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    args = parser.parse_args()

    available = sorted(name for name in os.listdir(FIXTURE_DIR) if name.endswith((".ts", ".net")))
    if args.fixtures:
        wanted = {stem.strip() for stem in args.fixtures.split(",")}
        selected = [name for name in available if name.rsplit(".", 1)[0] in wanted]
        unknown = wanted - {name.rsplit(".", 1)[0] for name in selected}
        if unknown:
            print(f"WARNING: Unknown fixtures ignored: {sorted(unknown)}")
    else:
        selected = available

    print("=" * 60)
    print("FIXTURE RUN")
    print("=" * 60)
    failures = 0
    for name in selected:
        print(f"\n{name}")
        path = os.path.join(FIXTURE_DIR, name)
        try:
            if name.endswith(".ts"):
                report_transition_system(path, args.horizon)
            else:
                report_network(path, args.horizon, args.seed)
        except FVNError as e:
            failures += 1
            print(f"  ERROR: {e.message}")

    print("\n" + "=" * 60)
    print(f"DONE ({len(selected)} fixtures, {failures} failed)")
    print("=" * 60)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
