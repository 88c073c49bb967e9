"""Matrix carriers used by the STP algebra"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from core.errors import InvalidInputError


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class LogicalMatrix:
    """Matrix whose j-th column is delta_rows^{cols[j]} (1-based indices)"""

    rows: int
    cols: np.ndarray

    def __post_init__(self):
        if self.rows < 1:
            raise InvalidInputError(f"Logical matrix needs at least one row, got {self.rows}")
        cols = np.asarray(self.cols, dtype=np.int64).reshape(-1)
        if cols.size and (cols.min() < 1 or cols.max() > self.rows):
            bad = int(np.flatnonzero((cols < 1) | (cols > self.rows))[0])
            raise InvalidInputError(
                f"Column {bad + 1} points at row {int(cols[bad])}, outside [1, {self.rows}]",
                column=bad + 1,
            )
        object.__setattr__(self, "cols", _frozen(cols))

    @classmethod
    def delta(cls, rows: int, indices) -> "LogicalMatrix":
        """delta_rows[i_1, ..., i_s]"""
        return cls(rows, np.asarray(list(indices), dtype=np.int64))

    @property
    def n_cols(self) -> int:
        return int(self.cols.size)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.n_cols)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.shape, dtype=np.int64)
        dense[self.cols - 1, np.arange(self.n_cols)] = 1
        return dense

    def to_boolean(self) -> "BooleanMatrix":
        return BooleanMatrix(self.to_dense().astype(bool))

    def column(self, j: int) -> int:
        """Row index (1-based) of the one in column j (1-based)"""
        return int(self.cols[j - 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogicalMatrix):
            return NotImplemented
        return self.rows == other.rows and np.array_equal(self.cols, other.cols)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols.tobytes()))

    def __repr__(self) -> str:
        preview = ",".join(str(int(i)) for i in self.cols[:8])
        more = ",..." if self.n_cols > 8 else ""
        return f"LogicalMatrix(delta_{self.rows}[{preview}{more}])"


@dataclass(frozen=True, eq=False)
class BooleanMatrix:
    """0/1 matrix; zero columns encode undefined transitions"""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 2:
            raise InvalidInputError(f"Boolean matrix must be two-dimensional, got {data.ndim} dims")
        if data.dtype != bool:
            if np.any((data != 0) & (data != 1)):
                raise InvalidInputError("Boolean matrix entries must be 0 or 1")
            data = data.astype(bool)
        object.__setattr__(self, "data", _frozen(data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BooleanMatrix":
        return cls(np.zeros((rows, cols), dtype=bool))

    @classmethod
    def from_column_sets(cls, rows: int, columns) -> "BooleanMatrix":
        """Build from per-column collections of 1-based row indices"""
        columns = list(columns)
        data = np.zeros((rows, len(columns)), dtype=bool)
        for j, members in enumerate(columns):
            for i in members:
                data[i - 1, j] = True
        return cls(data)

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def n_cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.n_cols)

    def to_dense(self) -> np.ndarray:
        return self.data.astype(np.int64)

    def column_set(self, j: int) -> frozenset[int]:
        """1-based row indices of the ones in column j (1-based)"""
        return frozenset(int(i) + 1 for i in np.flatnonzero(self.data[:, j - 1]))

    def column_sets(self) -> list[frozenset[int]]:
        return [self.column_set(j) for j in range(1, self.n_cols + 1)]

    def is_logical(self) -> bool:
        return bool(np.all(self.data.sum(axis=0) == 1))

    def to_logical(self) -> LogicalMatrix:
        if not self.is_logical():
            raise InvalidInputError("Boolean matrix has a column without exactly one 1")
        return LogicalMatrix(self.rows, np.argmax(self.data, axis=0) + 1)

    def __eq__(self, other) -> bool:
        if isinstance(other, LogicalMatrix):
            other = other.to_boolean()
        if not isinstance(other, BooleanMatrix):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.shape, self.data.tobytes()))


@dataclass(frozen=True, eq=False)
class CountMatrix:
    """Nonnegative integer transition counts"""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.int64)
        if data.ndim != 2:
            raise InvalidInputError(f"Count matrix must be two-dimensional, got {data.ndim} dims")
        if data.size and data.min() < 0:
            raise InvalidInputError("Count matrix entries must be nonnegative")
        object.__setattr__(self, "data", _frozen(data))

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def n_cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.n_cols)

    def column_sums(self) -> np.ndarray:
        return self.data.sum(axis=0)

    def to_dense(self) -> np.ndarray:
        return np.array(self.data, copy=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CountMatrix):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.shape, self.data.tobytes()))


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """Exact rational column-stochastic matrix

    Columns listed in dead_columns (1-based) are identically zero.
    """

    entries: tuple[tuple[Fraction, ...], ...]
    dead_columns: tuple[int, ...] = field(default=())

    def __post_init__(self):
        entries = tuple(tuple(Fraction(value) for value in row) for row in self.entries)
        widths = {len(row) for row in entries}
        if len(widths) > 1:
            raise InvalidInputError("Stochastic matrix rows have different lengths")
        for row in entries:
            for value in row:
                if value < 0 or value > 1:
                    raise InvalidInputError(f"Probability {value} outside [0, 1]")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "dead_columns", tuple(int(j) for j in self.dead_columns))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def n_cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.n_cols)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j - 1] for row in self.entries)

    def column_sum(self, j: int) -> Fraction:
        return sum(self.column(j), Fraction(0))

    def support(self) -> BooleanMatrix:
        return BooleanMatrix(np.array([[value > 0 for value in row] for row in self.entries], dtype=bool).reshape(self.shape))

    def __eq__(self, other) -> bool:
        if not isinstance(other, StochasticMatrix):
            return NotImplemented
        return self.entries == other.entries and self.dead_columns == other.dead_columns

    def __hash__(self) -> int:
        return hash((self.entries, self.dead_columns))
