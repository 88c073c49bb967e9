"""Quotient systems, bisimulation and output languages of ASSRs

Usage:
    from services.transition import quotient, check_bisimulation, check_language_relation
"""

from .bisimulation import check_bisimulation
from .dynamics import has_dead_ends, step, successor_table
from .language import check_language_relation, format_word, output_language
from .models import (
    BisimulationReport,
    BisimulationVerdict,
    BisimulationWitness,
    ClassLanguageVerdict,
    LanguageReport,
    OutputLanguage,
    OutputPartition,
    OutputWord,
)
from .quotient import concretize, is_deterministic, output_partition, quotient, quotient_by_definition

__all__ = [
    "BisimulationReport",
    "BisimulationVerdict",
    "BisimulationWitness",
    "ClassLanguageVerdict",
    "LanguageReport",
    "OutputLanguage",
    "OutputPartition",
    "OutputWord",
    "check_bisimulation",
    "check_language_relation",
    "concretize",
    "format_word",
    "has_dead_ends",
    "is_deterministic",
    "output_language",
    "output_partition",
    "quotient",
    "quotient_by_definition",
    "step",
    "successor_table",
]
