from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major; immutable and hashable."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("Matrix dimensions must be nonnegative.")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"Expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} matrix, got {len(self.entries)}."
            )
        object.__setattr__(self, "entries", tuple(int(value) for value in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        row_list = [list(row) for row in rows]
        width = len(row_list[0]) if row_list else (cols or 0)
        if cols is not None and row_list and width != cols:
            raise ValueError(f"Rows have length {width}, expected {cols}.")
        for row in row_list:
            if len(row) != width:
                raise ValueError("All rows must have the same length.")
        return cls(len(row_list), width, tuple(value for row in row_list for value in row))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
        if not columns:
            return cls(rows or 0, 0, ())
        return cls.from_rows(list(zip(*columns)), cols=len(columns))

    @classmethod
    def identity(cls, size: int) -> IntMatrix:
        return cls(size, size, tuple(1 if i == j else 0 for i in range(size) for j in range(size)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, index: int) -> tuple[int, ...]:
        start = index * self.cols
        return self.entries[start : start + self.cols]

    def column(self, index: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + index] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def select_columns(self, indices: Iterable[int]) -> IntMatrix:
        chosen = list(indices)
        return IntMatrix.from_rows([[self[i, j] for j in chosen] for i in range(self.rows)], cols=len(chosen))

    def select_rows(self, indices: Iterable[int]) -> IntMatrix:
        chosen = list(indices)
        return IntMatrix.from_rows([self.row(i) for i in chosen], cols=self.cols)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}.")
        product = [
            [sum(self[i, k] * other[k, j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(product, cols=other.cols)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise ValueError(f"Vector of length {len(vector)} does not match {self.cols} columns.")
        return tuple(sum(self[i, k] * vector[k] for k in range(self.cols)) for i in range(self.rows))

    def to_domain_matrix(self, domain=ZZ) -> DomainMatrix:
        return DomainMatrix([[domain(value) for value in row] for row in self.to_rows()], (self.rows, self.cols), domain)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("Determinant needs a square matrix.")
        if self.rows == 0:
            return 1
        return int(self.to_domain_matrix().det())

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return int(self.to_domain_matrix(QQ).rank())

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.det() in (1, -1)


def vector_gcd(values: Iterable[int]) -> int:
    result = 0
    for value in values:
        result = gcd(result, int(value))
    return result
