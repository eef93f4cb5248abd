from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .intmatrix import IntMatrix, vector_gcd

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmithForm:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    V_inverse: IntMatrix

    @property
    def divisors(self) -> tuple[int, ...]:
        size = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(size) if self.D[i, i] != 0)

    @property
    def rank(self) -> int:
        return len(self.divisors)


@dataclass(frozen=True)
class ValidationReport:
    first_row_ones: bool
    full_rank: bool
    lattice_index_one: bool
    rank: int
    lattice_index: int

    @property
    def ok(self) -> bool:
        return self.first_row_ones and self.full_rank and self.lattice_index_one

    def failures(self) -> list[str]:
        problems: list[str] = []
        if not self.first_row_ones:
            problems.append("first row is not all ones")
        if not self.full_rank:
            problems.append(f"rank {self.rank} is below the row count")
        if not self.lattice_index_one:
            problems.append(f"affine lattice of the columns has index {self.lattice_index}")
        return problems


def _identity_rows(size: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def _swap_rows(matrix: list[list[int]], i: int, j: int) -> None:
    if i != j:
        matrix[i], matrix[j] = matrix[j], matrix[i]


def _swap_cols(matrix: list[list[int]], i: int, j: int) -> None:
    if i != j:
        for row in matrix:
            row[i], row[j] = row[j], row[i]


def _add_row(matrix: list[list[int]], target: int, source: int, factor: int) -> None:
    if factor:
        matrix[target] = [a + factor * b for a, b in zip(matrix[target], matrix[source])]


def _add_col(matrix: list[list[int]], target: int, source: int, factor: int) -> None:
    if factor:
        for row in matrix:
            row[target] += factor * row[source]


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(s, t, g) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_s, -old_t, -old_r
    return old_s, old_t, old_r


def _combine_rows(matrix: list[list[int]], i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    """row_i, row_j <- a*row_i + b*row_j, c*row_i + d*row_j."""
    first, second = matrix[i], matrix[j]
    matrix[i] = [a * x + b * y for x, y in zip(first, second)]
    matrix[j] = [c * x + d * y for x, y in zip(first, second)]


def _combine_cols(matrix: list[list[int]], i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    for row in matrix:
        x, y = row[i], row[j]
        row[i], row[j] = a * x + b * y, c * x + d * y


def _smallest_pivot(work: list[list[int]], start: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_value = 0
    for i in range(start, len(work)):
        for j in range(start, len(work[i])):
            value = abs(work[i][j])
            if value and (best is None or value < best_value):
                best, best_value = (i, j), value
                if value == 1:
                    return best
    return best


def _first_non_multiple(work: list[list[int]], start: int, pivot: int) -> int | None:
    for i in range(start + 1, len(work)):
        for j in range(start + 1, len(work[i])):
            if work[i][j] % pivot:
                return i
    return None


def smith_form(M: IntMatrix) -> SmithForm:
    """Smith normal form with tracked transforms: U·M·V = D, V·V_inverse = I.

    Off-pivot entries are cleared with 2x2 Bezout steps.
    """
    m, n = M.rows, M.cols
    work = M.to_rows()
    U = _identity_rows(m)
    V = _identity_rows(n)
    V_inv = _identity_rows(n)

    def clear_column(t: int) -> None:
        for i in range(t + 1, m):
            p, x = work[t][t], work[i][t]
            if not x:
                continue
            if x % p == 0:
                _add_row(work, i, t, -(x // p))
                _add_row(U, i, t, -(x // p))
                continue
            s, r, g = _extended_gcd(p, x)
            for matrix in (work, U):
                _combine_rows(matrix, t, i, s, r, x // g, -(p // g))

    def clear_row(t: int) -> None:
        for j in range(t + 1, n):
            p, x = work[t][t], work[t][j]
            if not x:
                continue
            if x % p == 0:
                q = x // p
                _add_col(work, j, t, -q)
                _add_col(V, j, t, -q)
                _add_row(V_inv, t, j, q)
                continue
            s, r, g = _extended_gcd(p, x)
            for matrix in (work, V):
                _combine_cols(matrix, t, j, s, r, x // g, -(p // g))
            # Inverse of the column step, applied on the left of V_inverse.
            _combine_rows(V_inv, t, j, p // g, x // g, r, -s)

    t = 0
    while t < min(m, n):
        pivot = _smallest_pivot(work, t)
        if pivot is None:
            break
        _swap_rows(work, t, pivot[0])
        _swap_rows(U, t, pivot[0])
        _swap_cols(work, t, pivot[1])
        _swap_cols(V, t, pivot[1])
        _swap_rows(V_inv, t, pivot[1])

        while True:
            clear_column(t)
            clear_row(t)
            if any(work[i][t] for i in range(t + 1, m)):
                continue
            offender = _first_non_multiple(work, t, work[t][t])
            if offender is None:
                break
            _add_row(work, t, offender, 1)
            _add_row(U, t, offender, 1)

        if work[t][t] < 0:
            work[t] = [-value for value in work[t]]
            U[t] = [-value for value in U[t]]
        t += 1

    return SmithForm(
        D=IntMatrix.from_rows(work, cols=n),
        U=IntMatrix.from_rows(U, cols=m),
        V=IntMatrix.from_rows(V, cols=n),
        V_inverse=IntMatrix.from_rows(V_inv, cols=n),
    )


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    form = smith_form(M)
    return form.D, form.U, form.V


def row_hermite_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows are dropped."""
    work = [list(row) for row in rows]
    if not work:
        return []
    width = len(work[0])
    pivot_row = 0
    for col in range(width):
        if pivot_row >= len(work):
            break
        while True:
            candidates = [i for i in range(pivot_row, len(work)) if work[i][col]]
            if not candidates:
                break
            best = min(candidates, key=lambda i: abs(work[i][col]))
            _swap_rows(work, pivot_row, best)
            done = True
            for i in range(pivot_row + 1, len(work)):
                if work[i][col]:
                    _add_row(work, i, pivot_row, -(work[i][col] // work[pivot_row][col]))
                    if work[i][col]:
                        done = False
            if done:
                break
        if not work[pivot_row][col]:
            continue
        if work[pivot_row][col] < 0:
            work[pivot_row] = [-value for value in work[pivot_row]]
        for i in range(pivot_row):
            _add_row(work, i, pivot_row, -(work[i][col] // work[pivot_row][col]))
        pivot_row += 1
    return [row for row in work if any(row)]


def complete_to_unimodular(first_row: Sequence[int]) -> IntMatrix:
    """Unimodular matrix whose first row is the given primitive vector."""
    vector = [int(value) for value in first_row]
    if vector_gcd(vector) != 1:
        raise ValueError(f"Vector {tuple(vector)} is not primitive.")
    form = smith_form(IntMatrix.from_rows([vector]))
    completion = form.V_inverse.to_rows()
    # U is [±1] and D is [1, 0, ..., 0], so row 0 of V_inverse is ±vector.
    sign = form.U[0, 0]
    completion[0] = [sign * value for value in completion[0]]
    return IntMatrix.from_rows(completion, cols=len(vector))


def saturated_row_basis(A: IntMatrix) -> IntMatrix:
    """Basis of rowspace(A) ∩ ℤⁿ, one row per unit of rank."""
    form = smith_form(A)
    return form.V_inverse.select_rows(range(form.rank))


def normalize_design_matrix(A: IntMatrix) -> IntMatrix:
    """Full-rank representative of A's row space with lattice index one and an all-ones first row."""
    form = smith_form(A)
    rank = form.rank
    if rank == 0:
        raise ValueError("Design matrix has rank zero.")
    basis = form.V_inverse.select_rows(range(rank))
    ones = (1,) * A.cols
    coefficients = tuple(sum(form.V[j, k] for j in range(A.cols)) for k in range(rank))
    if IntMatrix.from_rows([coefficients]) @ basis != IntMatrix.from_rows([ones]):
        raise ValueError("The all-ones vector is not in the row space of the design matrix.")

    completed = complete_to_unimodular(coefficients) @ basis
    # Lower rows span the sublattice vanishing on the first column, then shift to a zero minimum.
    lower = row_hermite_form([[value - row[0] for value in row] for row in completed.to_rows()[1:]])
    lower = [[value - min(row) for value in row] for row in lower]
    normalized = IntMatrix.from_rows([list(ones), *lower], cols=A.cols)
    logger.debug("Normalized %sx%s design matrix to rank %s.", A.rows, A.cols, rank)
    return normalized


def affine_lattice_index(A: IntMatrix) -> int:
    columns = A.columns()
    if len(columns) <= 1:
        return 1
    base = columns[0]
    differences = IntMatrix.from_columns([tuple(a - b for a, b in zip(col, base)) for col in columns[1:]])
    index = 1
    for divisor in smith_form(differences).divisors:
        index *= divisor
    return index


def validate_design_matrix(A: IntMatrix) -> ValidationReport:
    first_row_ones = A.rows > 0 and all(value == 1 for value in A.row(0))
    rank = A.rank()
    index = affine_lattice_index(A)
    return ValidationReport(
        first_row_ones=first_row_ones,
        full_rank=rank == A.rows,
        lattice_index_one=index == 1,
        rank=rank,
        lattice_index=index,
    )
