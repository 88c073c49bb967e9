"""Finite-horizon output languages and their inclusion/equality checks"""

import logging
from typing import Iterable

from core.config import settings
from core.errors import InvalidInputError
from services.assr import Assr

from .dynamics import successor_table
from .models import ClassLanguageVerdict, LanguageReport, OutputLanguage, OutputWord
from .quotient import output_partition, quotient

logger = logging.getLogger(__name__)

Prefix = tuple[tuple[int, ...], tuple[int, ...]]


def output_language(
    assr: Assr,
    initial: Iterable[int],
    horizon: int,
    cap: int | None = None,
) -> OutputLanguage:
    """
    All (input word, output word) pairs of length horizon + 1 starting in `initial`

    The frontier keeps, for every prefix, the set of states consistent with it.
    A state without successors under some input ends its trajectory there and the
    prefix is recorded as a truncated word. When the frontier grows past `cap`
    only the first `cap` prefixes (in sorted order) are kept and the result is
    flagged partial.
    """
    if horizon < 0:
        raise InvalidInputError(f"Horizon must be nonnegative, got {horizon}")
    cap = cap or settings.LANGUAGE_CAP
    initial = tuple(sorted(set(initial)))
    for state in initial:
        if not 1 <= state <= assr.n_states:
            raise InvalidInputError(f"Initial state {state} outside [1, {assr.n_states}]")

    observations = assr.H.cols
    table = successor_table(assr)

    frontier: dict[Prefix, set[int]] = {}
    for state in initial:
        frontier.setdefault(((), (int(observations[state - 1]),)), set()).add(state)

    truncated: set[OutputWord] = set()
    partial = False
    for _ in range(horizon):
        extended: dict[Prefix, set[int]] = {}
        for (inputs, outputs), states in frontier.items():
            for u, row in enumerate(table, start=1):
                for state in states:
                    successors = row[state - 1]
                    if not successors:
                        truncated.add(OutputWord(inputs=inputs, outputs=outputs, truncated=True))
                    for successor in successors:
                        key = (inputs + (u,), outputs + (int(observations[successor - 1]),))
                        extended.setdefault(key, set()).add(successor)

        if len(extended) + len(truncated) > cap:
            partial = True
            keep = max(cap - len(truncated), 0)
            extended = {key: extended[key] for key in sorted(extended)[:keep]}
            logger.warning(f"Output language of '{assr.name}' reached the cap of {cap} words; result is partial")
        frontier = extended

    words = {OutputWord(inputs=inputs, outputs=outputs) for inputs, outputs in frontier}
    return OutputLanguage(
        horizon=horizon,
        initial=initial,
        words=frozenset(words | truncated),
        partial=partial,
    )


def _missing_words(system: OutputLanguage, abstraction: OutputLanguage) -> list[OutputWord]:
    """System words not covered by the abstraction; a truncated word is covered by any extension"""
    covered = abstraction.words
    missing = []
    for word in system.sorted_words():
        if word.truncated:
            if not any(word.is_prefix_of(candidate) for candidate in covered):
                missing.append(word)
        elif word not in covered:
            missing.append(word)
    return missing


def check_language_relation(assr: Assr, horizon: int, cap: int | None = None) -> LanguageReport:
    """
    Compare L_T(con(X_i)) with L_{T/∼}(X_i) for every nonempty class

    Inclusion is the simulation property of the quotient; equality holds for
    a bisimulation.
    """
    partition = output_partition(assr)
    abstraction = quotient(assr)

    verdicts = []
    skipped = []
    for index, members in enumerate(partition.classes, start=1):
        if not members:
            skipped.append(index)
            logger.debug(f"Class {index} of '{assr.name}' is empty, skipped")
            continue
        system_words = output_language(assr, members, horizon, cap)
        quotient_words = output_language(abstraction, [index], horizon, cap)
        missing = _missing_words(system_words, quotient_words)
        extra = sorted(quotient_words.words - system_words.words, key=OutputWord.sort_key)
        verdicts.append(
            ClassLanguageVerdict(
                class_index=index,
                label=assr.observation_label(index),
                inclusion=not missing,
                equality=not missing and not extra,
                missing=tuple(missing),
                extra=tuple(extra),
                partial=system_words.partial or quotient_words.partial,
            )
        )

    report = LanguageReport(horizon=horizon, classes=tuple(verdicts), skipped_classes=tuple(skipped))
    logger.info(
        f"Language check of '{assr.name}' at horizon {horizon}: "
        f"inclusion={report.inclusion}, equality={report.equality}"
    )
    return report


def format_word(assr: Assr, word: OutputWord) -> str:
    """(O3,O1,O2), with a trailing ellipsis when truncated"""
    labels = ",".join(assr.observation_label(o) for o in word.outputs)
    return f"({labels}{',...' if word.truncated else ''})"
