"""Bisimulation check of the quotient under output equivalence.

Two equivalent states must reach the same set of classes under every input.
The condition is checked in both directions, and a dead end against a live
successor set counts as a mismatch.
"""

import logging

from services.assr import Assr

from .dynamics import has_dead_ends, successor_table
from .models import BisimulationReport, BisimulationVerdict, BisimulationWitness
from .quotient import is_deterministic, output_partition, quotient

logger = logging.getLogger(__name__)


def _find_witness(assr: Assr) -> BisimulationWitness | None:
    partition = output_partition(assr)
    table = successor_table(assr)
    observations = assr.H.cols
    for u, row in enumerate(table, start=1):
        for observation, members in enumerate(partition.classes, start=1):
            if len(members) < 2:
                continue
            first = members[0]
            expected = frozenset(int(observations[y - 1]) for y in row[first - 1])
            for other in members[1:]:
                reached = frozenset(int(observations[y - 1]) for y in row[other - 1])
                if reached != expected:
                    return BisimulationWitness(
                        first=first,
                        second=other,
                        input=u,
                        observation=observation,
                        first_classes=tuple(sorted(expected)),
                        second_classes=tuple(sorted(reached)),
                    )
    return None


def check_bisimulation(assr: Assr) -> BisimulationReport:
    deterministic = is_deterministic(assr)
    quotient_deterministic = is_deterministic(quotient(assr))

    clause = None
    if quotient_deterministic and not has_dead_ends(assr):
        clause = "i"
    elif deterministic and not quotient_deterministic:
        clause = "ii"

    witness = _find_witness(assr)
    verdict = BisimulationVerdict.BISIMULATION if witness is None else BisimulationVerdict.NOT_BISIMULATION
    if witness is not None:
        logger.info(
            f"'{assr.name}' is not a bisimulation: states {witness.first} and {witness.second} "
            f"split under input {witness.input}"
        )
    return BisimulationReport(
        verdict=verdict,
        witness=witness,
        deterministic=deterministic,
        quotient_deterministic=quotient_deterministic,
        clause=clause,
    )
