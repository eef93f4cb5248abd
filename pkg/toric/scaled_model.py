from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from core.rationals import parse_rationals
from lattice.intmatrix import IntMatrix
from lattice.normal_forms import validate_design_matrix
from polytope.configuration import PointConfiguration


class ModelSpecError(ValueError):
    pass


class ScalingLengthMismatch(ValueError):
    pass


class SpanCollapse(ValueError):
    pass


# Named scalings of the 3x3 independence model, row-major over states (i, j).
SCALING_PRESETS: dict[str, tuple[tuple[int, ...], ...]] = {
    "c1": ((1, 1, 1), (1, 1, 1), (1, 1, 1)),
    "c2": ((1, 1, 1), (1, 1, 2), (1, 1, 2)),
    "c3": ((1, 1, 1), (1, 2, 3), (1, 2, 3)),
    "c4": ((1, 1, 1), (1, 2, 3), (1, 2, 1)),
    "c5": ((1, 1, 1), (1, 2, 3), (1, 3, 5)),
    "c6": ((1, 1, 1), (1, 2, 3), (2, 3, 1)),
}


def preset_scaling(name: str) -> tuple[Fraction, ...]:
    try:
        grid = SCALING_PRESETS[name.lower()]
    except KeyError as exc:
        raise ValueError(f"Unknown scaling preset {name!r}; expected one of {sorted(SCALING_PRESETS)}.") from exc
    return tuple(Fraction(value) for row in grid for value in row)


def ones_scaling(count: int) -> tuple[Fraction, ...]:
    return (Fraction(1),) * count


def resolve_scaling(scaling, count: int) -> tuple[Fraction, ...]:
    """Accept "ones", a preset name or a sequence of rationals; the result has exactly ``count`` entries."""
    if scaling is None or scaling == "ones":
        return ones_scaling(count)
    if isinstance(scaling, str):
        if scaling.lower() not in SCALING_PRESETS:
            raise ModelSpecError(f"Unknown scaling keyword {scaling!r}; expected 'ones' or one of {sorted(SCALING_PRESETS)}.")
        values = preset_scaling(scaling)
    else:
        values = parse_rationals(scaling)
    if len(values) != count:
        raise ScalingLengthMismatch(f"Scaling has {len(values)} entries, model has {count} columns.")
    return values


@dataclass(frozen=True)
class ScaledModel:
    """Design matrix A (all-ones first row) together with nonzero scalings c, one per column."""

    A: IntMatrix
    c: tuple[Fraction, ...]
    provenance: str = ""

    def __post_init__(self) -> None:
        c = parse_rationals(self.c)
        if len(c) != self.A.cols:
            raise ScalingLengthMismatch(f"Scaling has {len(c)} entries, design matrix has {self.A.cols} columns.")
        if any(value == 0 for value in c):
            raise ModelSpecError("Scalings must be nonzero.")
        report = validate_design_matrix(self.A)
        if not report.ok:
            raise ModelSpecError("Invalid design matrix: " + "; ".join(report.failures()) + ".")
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def d(self) -> int:
        return self.A.rows - 1

    @property
    def exponents(self) -> list[tuple[int, ...]]:
        """Columns of A without the homogenizing coordinate."""
        return [column[1:] for column in self.A.columns()]

    def configuration(self) -> PointConfiguration:
        return PointConfiguration.from_design_matrix(self.A)

    def with_scaling(self, scaling: Sequence, provenance: str | None = None) -> ScaledModel:
        return ScaledModel(
            A=self.A,
            c=resolve_scaling(scaling, self.n),
            provenance=self.provenance if provenance is None else provenance,
        )
