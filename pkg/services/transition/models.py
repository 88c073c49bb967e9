"""Pydantic models for quotients, bisimulation verdicts and output languages"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict


class OutputPartition(BaseModel):
    """X/∼: classes[i-1] = con(X_i) = {x : H x = δ_p^i}, states 1-based"""

    model_config = ConfigDict(frozen=True)

    n_states: int
    classes: tuple[tuple[int, ...], ...]

    @property
    def p(self) -> int:
        return len(self.classes)

    def class_of(self, state: int) -> int:
        for index, members in enumerate(self.classes, start=1):
            if state in members:
                return index
        raise KeyError(state)


class OutputWord(BaseModel):
    """Observation sequence o_0 ... o_t together with the inputs u_0 ... u_{t-1} producing it.

    A truncated word is the maximal prefix of a trajectory that reached a state
    without successors before the horizon.
    """

    model_config = ConfigDict(frozen=True)

    inputs: tuple[int, ...] = ()
    outputs: tuple[int, ...]
    truncated: bool = False

    def is_prefix_of(self, other: "OutputWord") -> bool:
        size = len(self.outputs)
        return other.outputs[:size] == self.outputs and other.inputs[: size - 1] == self.inputs

    def sort_key(self) -> tuple:
        return (len(self.outputs), self.outputs, self.inputs, self.truncated)


class OutputLanguage(BaseModel):
    model_config = ConfigDict(frozen=True)

    horizon: int
    initial: tuple[int, ...]
    words: frozenset[OutputWord]
    partial: bool = False

    @property
    def full_words(self) -> frozenset[OutputWord]:
        return frozenset(word for word in self.words if not word.truncated)

    @property
    def truncated_words(self) -> frozenset[OutputWord]:
        return frozenset(word for word in self.words if word.truncated)

    def output_sequences(self) -> frozenset[tuple[int, ...]]:
        """Observation sequences with the inputs forgotten"""
        return frozenset(word.outputs for word in self.words)

    def sorted_words(self) -> list[OutputWord]:
        return sorted(self.words, key=OutputWord.sort_key)


class BisimulationVerdict(str, Enum):
    BISIMULATION = "BISIMULATION"
    NOT_BISIMULATION = "NOT_BISIMULATION"


class BisimulationWitness(BaseModel):
    """Two equivalent states whose successor classes differ under one input"""

    model_config = ConfigDict(frozen=True)

    first: int
    second: int
    input: int
    observation: int
    first_classes: tuple[int, ...]
    second_classes: tuple[int, ...]


class BisimulationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdict: BisimulationVerdict
    witness: Optional[BisimulationWitness] = None
    deterministic: bool
    quotient_deterministic: bool
    # "i": the quotient is deterministic over total transitions; "ii": the system is
    # deterministic, so bisimulation holds iff the quotient is deterministic
    clause: Optional[str] = None

    @property
    def is_bisimulation(self) -> bool:
        return self.verdict == BisimulationVerdict.BISIMULATION


class ClassLanguageVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    class_index: int
    label: str
    inclusion: bool
    equality: bool
    # words of the system missing from the quotient, and quotient words the system lacks
    missing: tuple[OutputWord, ...] = ()
    extra: tuple[OutputWord, ...] = ()
    partial: bool = False


class LanguageReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    horizon: int
    classes: tuple[ClassLanguageVerdict, ...]
    skipped_classes: tuple[int, ...] = ()

    @property
    def inclusion(self) -> bool:
        return all(verdict.inclusion for verdict in self.classes)

    @property
    def equality(self) -> bool:
        return all(verdict.equality for verdict in self.classes)

    @property
    def partial(self) -> bool:
        return any(verdict.partial for verdict in self.classes)

    def verdict_for(self, class_index: int) -> ClassLanguageVerdict:
        for verdict in self.classes:
            if verdict.class_index == class_index:
                return verdict
        raise KeyError(class_index)
