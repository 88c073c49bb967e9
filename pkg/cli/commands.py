"""Subcommands: compile, quotient, check, aggregate, simulate, export-dot"""

import logging
from pathlib import Path
from typing import Callable

from core.errors import FVNError, InvalidInputError
from services.aggregation import (
    assemble_aggregated,
    render_block_diagram,
    render_network_graph,
    render_transition_system,
    simulate_aggregated,
)
from services.aggregation.rendering import templates
from services.assr import Assr, compile_network, compile_raw_ts
from services.netdsl import Network, RawTransitionSpec, build_network_graph, parse_network, parse_transition_system
from services.transition import check_bisimulation, check_language_relation, format_word, quotient

from .models import Command, OutputFormat, RunConfig
from .serializers import (
    aggregated_from_dict,
    aggregated_to_dict,
    assr_to_dict,
    check_to_dict,
    matrix_to_dict,
    read_json,
    simulation_to_dict,
    write_json,
)

logger = logging.getLogger(__name__)


def _read_text(path: Path) -> str:
    if not path.is_file():
        raise InvalidInputError(f"Input file not found: {path}", path=str(path))
    return path.read_text(encoding="utf-8")


def load_source(path: Path) -> Network | RawTransitionSpec:
    """A network (`net ...`) or a transition system (`ts ...`), told apart by the first statement"""
    text = _read_text(path)
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.split()[0] == "net":
            return parse_network(text)
        return parse_transition_system(text)
    raise InvalidInputError(f"{path} is empty", path=str(path))


def load_network(path: Path) -> Network:
    source = load_source(path)
    if not isinstance(source, Network):
        raise InvalidInputError(f"{path} describes a transition system, a network is required", path=str(path))
    return source


def load_assr(config: RunConfig) -> Assr:
    source = load_source(config.input)
    if isinstance(source, Network):
        return compile_network(source, config.size_cap)
    return compile_raw_ts(source)


def parse_input_words(text: str | None, controls: int) -> list[tuple[int, ...]] | None:
    """"111,121" -> [(1, 1, 1), (1, 2, 1)]; "-" is one step of an autonomous network"""
    if text is None:
        return None
    steps = []
    for position, word in enumerate(filter(None, (part.strip() for part in text.split(","))), start=1):
        values = () if word == "-" else tuple(int(ch) for ch in word if ch.isdigit())
        if len(values) != controls or (word != "-" and len(values) != len(word)):
            raise InvalidInputError(
                f"Input step {position} ('{word}') must give one digit per control ({controls})",
                step=position,
            )
        steps.append(values)
    return steps


def parse_initial(text: str | None, names: tuple[str, ...]) -> dict[str, int]:
    if text is None:
        return {}
    digits = text.strip()
    if len(digits) != len(names) or not digits.isdigit():
        raise InvalidInputError(f"--initial must give one digit per aggregated node ({len(names)})")
    return {name: int(digit) for name, digit in zip(names, digits)}


def _write_dot(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def _write_assr(config: RunConfig, assr: Assr, suffix: str) -> list[Path]:
    """JSON document, plus the transition graph when --format dot"""
    written = [write_json(config.output_dir / f"{config.stem}.{suffix}.json", assr_to_dict(assr))]
    if config.format == OutputFormat.DOT:
        written.append(_write_dot(config.output_dir / f"{config.stem}.{suffix}.dot", render_transition_system(assr)))
    return written


def run_compile(config: RunConfig) -> list[Path]:
    return _write_assr(config, load_assr(config), "assr")


def run_quotient(config: RunConfig) -> list[Path]:
    return _write_assr(config, quotient(load_assr(config)), "quotient")


def run_check(config: RunConfig) -> list[Path]:
    assr = load_assr(config)
    bisimulation = check_bisimulation(assr)
    language = check_language_relation(assr, config.horizon)
    written = [write_json(config.output_dir / f"{config.stem}.check.json", check_to_dict(assr, bisimulation, language))]

    if config.format == OutputFormat.TEXT:
        classes = [
            {
                "label": verdict.label,
                "inclusion": verdict.inclusion,
                "equality": verdict.equality,
                "partial": verdict.partial,
                "missing": [format_word(assr, word) for word in verdict.missing],
                "extra": [format_word(assr, word) for word in verdict.extra],
            }
            for verdict in language.classes
        ]
        report = templates.get_template("check_report.txt.j2").render(
            name=assr.name,
            n_states=assr.n_states,
            m_inputs=assr.m_inputs,
            p_obs=assr.p_obs,
            bisimulation=bisimulation,
            witness=bisimulation.witness,
            language=language,
            classes=classes,
        )
        path = config.output_dir / f"{config.stem}.check.txt"
        path.write_text(report, encoding="utf-8")
        written.append(path)
    return written


def run_aggregate(config: RunConfig) -> list[Path]:
    network = load_network(config.input)
    agg = assemble_aggregated(network, strict=config.strict, size_cap=config.size_cap)
    written = []
    for bq in agg.blocks:
        prefix = config.output_dir / f"{config.stem}.{bq.block.name}"
        written.append(write_json(Path(f"{prefix}.assr.json"), assr_to_dict(bq.assr)))
        written.append(write_json(Path(f"{prefix}.count.json"), matrix_to_dict(bq.count)))
        written.append(write_json(Path(f"{prefix}.boolean.json"), matrix_to_dict(bq.boolean_sim)))
        written.append(write_json(Path(f"{prefix}.stochastic.json"), matrix_to_dict(bq.prob)))
    written.append(write_json(config.output_dir / f"{config.stem}.aggregated.json", aggregated_to_dict(agg)))

    written.append(_write_dot(config.output_dir / f"{config.stem}.blocks.dot", render_block_diagram(agg)))
    return written


def run_simulate(config: RunConfig) -> list[Path]:
    agg = aggregated_from_dict(read_json(config.input))
    inputs = parse_input_words(config.inputs, agg.m)
    if inputs is None:
        inputs = [tuple(1 for _ in agg.controls)] * config.horizon
    result = simulate_aggregated(
        agg,
        inputs,
        initial=parse_initial(config.initial, agg.state_names),
        seed=config.seed,
        mode=config.mode,
    )
    return [write_json(config.output_dir / f"{config.stem}.trajectory.json", simulation_to_dict(result, agg))]


def run_export_dot(config: RunConfig) -> list[Path]:
    network = load_network(config.input)
    path = config.output_dir / f"{config.stem}.graph.dot"
    return [_write_dot(path, render_network_graph(build_network_graph(network), network.blocks))]


COMMANDS: dict[Command, Callable[[RunConfig], list[Path]]] = {
    Command.COMPILE: run_compile,
    Command.QUOTIENT: run_quotient,
    Command.CHECK: run_check,
    Command.AGGREGATE: run_aggregate,
    Command.SIMULATE: run_simulate,
    Command.EXPORT_DOT: run_export_dot,
}


def write_error(output_dir: Path, payload: dict) -> Path:
    return write_json(output_dir / "error.json", payload)


def run(config: RunConfig) -> int:
    """Execute one subcommand; 0 on success, 1 on invalid input, 2 on an internal failure"""
    try:
        written = COMMANDS[config.command](config)
    except FVNError as exc:
        logger.error(f"{config.command.value} failed: {exc}")
        write_error(config.output_dir, exc.to_payload())
        return exc.exit_status
    except Exception as exc:
        logger.exception(f"{config.command.value} failed unexpectedly")
        write_error(config.output_dir, {"error": "internal_error", "message": str(exc)})
        return 2

    for path in written:
        logger.info(f"Wrote {path}")
    return 0
