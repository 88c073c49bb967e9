"""Structure matrices of the DSL connectives"""

import numpy as np

from core.errors import InvalidInputError
from services.netdsl import Op
from services.netdsl.evaluate import BINARY_DIGITS, negate_digit
from services.stp import LogicalMatrix

NOT = "not"


def operator_structure_matrix(op: Op | str, k: int) -> LogicalMatrix:
    """M_op with op(x, y) = M_op ⋉ x ⋉ y (and ¬x = M_not ⋉ x)"""
    if k < 2:
        raise InvalidInputError(f"k must be at least 2, got {k}")

    if isinstance(op, str) and not isinstance(op, Op) and op.lower() in (NOT, "!"):
        return LogicalMatrix(k, np.array([negate_digit(d, k) + 1 for d in range(k)], dtype=np.int64))

    try:
        resolved = op if isinstance(op, Op) else Op.__members__.get(op.upper()) or Op(op)
    except ValueError:
        raise InvalidInputError(f"Unknown connective {op!r}") from None
    digits = BINARY_DIGITS[resolved]
    return LogicalMatrix(
        k,
        np.array([digits(a, b, k) + 1 for a in range(k) for b in range(k)], dtype=np.int64),
    )
