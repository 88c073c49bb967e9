"""Exact matrix algebra: semi-tensor, Kronecker and Boolean products"""

from .encoding import digit_columns, index_values, vector_index
from .models import BooleanMatrix, CountMatrix, LogicalMatrix, StochasticMatrix
from .products import (
    bool_product,
    booleanize,
    column_normalize,
    identity,
    integer_product,
    khatri_rao,
    kron,
    ones_row,
    power_reducing_matrix,
    stp,
    stp_chain,
    swap_matrix,
    transpose,
)

__all__ = [
    "BooleanMatrix",
    "CountMatrix",
    "LogicalMatrix",
    "StochasticMatrix",
    "bool_product",
    "booleanize",
    "column_normalize",
    "digit_columns",
    "identity",
    "index_values",
    "integer_product",
    "khatri_rao",
    "kron",
    "ones_row",
    "power_reducing_matrix",
    "stp",
    "stp_chain",
    "swap_matrix",
    "transpose",
    "vector_index",
]
