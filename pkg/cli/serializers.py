"""JSON documents for matrices, ASSRs, reports and aggregated networks.

Matrices follow one schema:
    {"kind": "logical", "rows": n, "cols": [i_1, ..., i_s]}            1-based row per column
    {"kind": "boolean", "rows": n, "cols": [[...], ...]}               1-based rows per column
    {"kind": "count", "rows": n, "cols": s, "data": [...]}             row-major integers
    {"kind": "stochastic", "rows": n, "cols": s, "data": ["a/b", ...], "dead_columns": [...]}
"""

import json
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from core.errors import InvalidInputError
from services.aggregation import (
    AggregatedNetwork,
    Block,
    BlockQuotient,
    SimulationResult,
    Source,
    build_wiring_graph,
)
from services.assr import Assr, AssrKind
from services.netdsl import format_expr, parse_expression
from services.stp import BooleanMatrix, CountMatrix, LogicalMatrix, StochasticMatrix
from services.transition import BisimulationReport, LanguageReport, OutputWord


def matrix_to_dict(matrix) -> dict[str, Any]:
    if isinstance(matrix, LogicalMatrix):
        return {"kind": "logical", "rows": matrix.rows, "cols": [int(i) for i in matrix.cols]}
    if isinstance(matrix, BooleanMatrix):
        return {"kind": "boolean", "rows": matrix.rows, "cols": [sorted(column) for column in matrix.column_sets()]}
    if isinstance(matrix, CountMatrix):
        return {"kind": "count", "rows": matrix.rows, "cols": matrix.n_cols, "data": [int(v) for v in matrix.data.reshape(-1)]}
    if isinstance(matrix, StochasticMatrix):
        return {
            "kind": "stochastic",
            "rows": matrix.rows,
            "cols": matrix.n_cols,
            "data": [f"{value.numerator}/{value.denominator}" for row in matrix.entries for value in row],
            "dead_columns": list(matrix.dead_columns),
        }
    raise TypeError(f"Cannot serialize {type(matrix).__name__}")


def matrix_from_dict(document: dict[str, Any]):
    kind = document.get("kind")
    rows = document["rows"]
    if kind == "logical":
        return LogicalMatrix(rows, np.asarray(document["cols"], dtype=np.int64))
    if kind == "boolean":
        return BooleanMatrix.from_column_sets(rows, document["cols"])
    if kind == "count":
        return CountMatrix(np.asarray(document["data"], dtype=np.int64).reshape(rows, document["cols"]))
    if kind == "stochastic":
        values = [Fraction(value) for value in document["data"]]
        cols = document["cols"]
        entries = tuple(tuple(values[i * cols : (i + 1) * cols]) for i in range(rows))
        return StochasticMatrix(entries, tuple(document.get("dead_columns", ())))
    raise InvalidInputError(f"Unknown matrix kind {kind!r}")


def assr_to_dict(assr: Assr) -> dict[str, Any]:
    return {
        "name": assr.name,
        "kind": assr.kind.value,
        "k": assr.k,
        "ordering": "x(t+1) = L u(t) x(t), y(t) = H x(t); first variable most significant",
        "state_names": list(assr.state_names),
        "input_names": list(assr.input_names),
        "observation_names": list(assr.observation_names),
        "n_states": assr.n_states,
        "m_inputs": assr.m_inputs,
        "p_obs": assr.p_obs,
        "L": matrix_to_dict(assr.L),
        "H": matrix_to_dict(assr.H),
    }


def assr_from_dict(document: dict[str, Any]) -> Assr:
    return Assr(
        L=matrix_from_dict(document["L"]),
        H=matrix_from_dict(document["H"]),
        kind=AssrKind(document["kind"]),
        k=document.get("k"),
        state_names=tuple(document.get("state_names", ())),
        input_names=tuple(document.get("input_names", ())),
        observation_names=tuple(document.get("observation_names", ())),
        name=document.get("name", ""),
    )


def word_to_dict(assr: Assr, word: OutputWord) -> dict[str, Any]:
    return {
        "inputs": list(word.inputs),
        "outputs": list(word.outputs),
        "labels": [assr.observation_label(o) for o in word.outputs],
        "truncated": word.truncated,
    }


def check_to_dict(assr: Assr, bisimulation: BisimulationReport, language: LanguageReport) -> dict[str, Any]:
    return {
        "name": assr.name,
        "bisimulation": {
            "verdict": bisimulation.verdict.value,
            "clause": bisimulation.clause,
            "deterministic": bisimulation.deterministic,
            "quotient_deterministic": bisimulation.quotient_deterministic,
            "witness": bisimulation.witness.model_dump() if bisimulation.witness else None,
        },
        "language": {
            "horizon": language.horizon,
            "inclusion": language.inclusion,
            "equality": language.equality,
            "partial": language.partial,
            "skipped_classes": list(language.skipped_classes),
            "classes": [
                {
                    "class": verdict.class_index,
                    "label": verdict.label,
                    "inclusion": verdict.inclusion,
                    "equality": verdict.equality,
                    "partial": verdict.partial,
                    "missing": [word_to_dict(assr, word) for word in verdict.missing],
                    "extra": [word_to_dict(assr, word) for word in verdict.extra],
                }
                for verdict in language.classes
            ],
        },
    }


def block_quotient_to_dict(bq: BlockQuotient) -> dict[str, Any]:
    return {
        "block": bq.block.model_dump(mode="json"),
        "xi": bq.xi,
        "eta": bq.eta,
        "deterministic": bq.deterministic,
        "assr": assr_to_dict(bq.assr),
        "count": matrix_to_dict(bq.count),
        "boolean": matrix_to_dict(bq.boolean_sim),
        "stochastic": matrix_to_dict(bq.prob),
    }


def aggregated_to_dict(agg: AggregatedNetwork) -> dict[str, Any]:
    return {
        "name": agg.name,
        "k": agg.k,
        "controls": list(agg.controls),
        "state_names": list(agg.state_names),
        "residual": list(agg.residual),
        "residual_updates": {node: format_expr(expr, agg.k) for node, expr in agg.residual_updates.items()},
        "outputs": {output: format_expr(expr, agg.k) for output, expr in agg.outputs.items()},
        "wiring": {name: source.model_dump(mode="json") for name, source in agg.wiring.items()},
        "renaming": dict(agg.renaming),
        "blocks": [block_quotient_to_dict(bq) for bq in agg.blocks],
    }


def aggregated_from_dict(document: dict[str, Any]) -> AggregatedNetwork:
    try:
        k = document["k"]
        blocks = tuple(
            BlockQuotient(
                block=Block.model_validate(entry["block"]),
                assr=assr_from_dict(entry["assr"]),
                count=matrix_from_dict(entry["count"]),
                boolean_sim=matrix_from_dict(entry["boolean"]),
                prob=matrix_from_dict(entry["stochastic"]),
                deterministic=entry["deterministic"],
            )
            for entry in document["blocks"]
        )
        agg = AggregatedNetwork(
            name=document["name"],
            k=k,
            controls=tuple(document["controls"]),
            blocks=blocks,
            wiring={name: Source.model_validate(source) for name, source in document["wiring"].items()},
            renaming=dict(document["renaming"]),
            residual=tuple(document.get("residual", ())),
            residual_updates={node: parse_expression(text, k) for node, text in document.get("residual_updates", {}).items()},
            outputs={output: parse_expression(text, k) for output, text in document.get("outputs", {}).items()},
        )
    except KeyError as exc:
        raise InvalidInputError(f"Aggregated network document lacks field {exc.args[0]!r}", field=exc.args[0]) from None
    return replace(agg, graph=build_wiring_graph(agg))


def simulation_to_dict(result: SimulationResult, agg: AggregatedNetwork) -> dict[str, Any]:
    return {
        "mode": result.mode.value,
        "horizon": result.horizon,
        "seed": result.seed,
        "outputs": list(agg.outputs),
        "words": [[list(letter) for letter in word] for word in result.words],
        "truncated": [[list(letter) for letter in word] for word in result.truncated],
        "states": [dict(state) for state in result.states],
        "partial": result.partial,
    }


def dump_json(document: Any) -> str:
    """Sorted keys and fixed indentation: identical documents give identical bytes"""
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write_json(path: Path, document: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(document), encoding="utf-8")
    return path


def read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: invalid JSON at line {exc.lineno}", line=exc.lineno, column=exc.colno) from None
