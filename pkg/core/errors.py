"""Error hierarchy shared by every service package.

Library code raises these; only the CLI turns them into an error document
and an exit status.
"""

from typing import Any


class FVNError(Exception):
    """Base class for all toolkit errors"""

    code = "fvn_error"
    exit_status = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = {key: value for key, value in details.items() if value is not None}

    def to_payload(self) -> dict[str, Any]:
        """Machine-readable form written to error.json"""
        return {"error": self.code, "message": self.message, **self.details}


class InvalidInputError(FVNError, ValueError):
    """Rejected input: DSL text, matrix shapes, run configuration"""

    code = "invalid_input"


class DSLSyntaxError(InvalidInputError):
    code = "syntax_error"

    def __init__(self, message: str, line: int, column: int, text: str | None = None):
        super().__init__(message, line=line, column=column, text=text)
        self.line = line
        self.column = column


class UndeclaredIdentifierError(InvalidInputError):
    code = "undeclared_identifier"

    def __init__(self, name: str, line: int | None = None, message: str | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(message or f"Undeclared identifier '{name}'{where}", identifier=name, line=line)
        self.name = name
        self.line = line


class DuplicateDefinitionError(InvalidInputError):
    code = "duplicate_definition"

    def __init__(self, name: str, line: int | None = None, message: str | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(message or f"'{name}' is defined more than once{where}", identifier=name, line=line)
        self.name = name
        self.line = line


class DomainSizeError(InvalidInputError):
    code = "domain_size"

    def __init__(self, message: str, value: int | None = None, line: int | None = None):
        super().__init__(message, value=value, line=line)
        self.value = value
        self.line = line


class EmptyNetworkError(InvalidInputError):
    code = "empty_network"

    def __init__(self, message: str = "Network declares no nodes"):
        super().__init__(message)


class DimensionMismatchError(InvalidInputError):
    code = "dimension_mismatch"

    def __init__(self, operation: str, left: tuple[int, int], right: tuple[int, int]):
        super().__init__(
            f"{operation}: incompatible shapes {left[0]}x{left[1]} and {right[0]}x{right[1]}",
            operation=operation,
            left=list(left),
            right=list(right),
        )


class SizeCapExceededError(InvalidInputError):
    code = "size_cap_exceeded"

    def __init__(self, columns: int, cap: int):
        super().__init__(
            f"State space needs {columns} columns, cap is {cap}. "
            "Declare blocks and run `aggregate` instead of compiling the whole network.",
            columns=columns,
            cap=cap,
        )
        self.columns = columns
        self.cap = cap


class DeadColumnError(InvalidInputError):
    code = "dead_column"

    def __init__(self, column: int, message: str | None = None):
        super().__init__(message or f"Column {column} has no transitions", column=column)
        self.column = column


class AggregationError(InvalidInputError):
    code = "aggregation_error"

    def __init__(self, message: str, block: str | None = None, identifier: str | None = None):
        super().__init__(message, block=block, identifier=identifier)
        self.block = block
        self.identifier = identifier


class InvariantViolation(FVNError):
    """Internal consistency failure (a bug, not bad input)"""

    code = "invariant_violation"
    exit_status = 2
