"""Block simulation: transition counts M_A and the Boolean quotient L̃_A"""

import logging

from services.assr import Assr
from services.stp import CountMatrix, booleanize, column_normalize, identity, integer_product, kron, transpose

from .models import Block, BlockQuotient

logger = logging.getLogger(__name__)


def block_count_matrix(assr: Assr) -> CountMatrix:
    """M_A = H_A L_A (I_{k^(m+α)} ⊗ H_A^T) over the nonnegative integers.

    Entry (i, j) counts the states of the j-th column's output class whose
    successor under that column's (u, v) produces block output i.
    """
    right = kron(identity(assr.m_inputs), transpose(assr.H))
    return integer_product(integer_product(assr.H, assr.L), right)


def block_simulation(assr: Assr, block: Block | None = None) -> BlockQuotient:
    count = block_count_matrix(assr)
    boolean_sim = booleanize(count)
    deterministic = boolean_sim.is_logical()
    name = block.name if block else assr.name
    logger.info(
        f"Block '{name}': quotient {count.rows}x{count.n_cols}, "
        f"{'deterministic' if deterministic else 'non-deterministic'}"
    )
    if block is None:
        block = Block(
            name=assr.name,
            nodes=assr.state_names,
            inputs=(),
            outputs=assr.observation_names,
            controls=assr.input_names,
        )
    return BlockQuotient(
        block=block,
        assr=assr,
        count=count,
        boolean_sim=boolean_sim,
        prob=column_normalize(count),
        deterministic=deterministic,
    )
