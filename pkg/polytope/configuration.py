from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from lattice.intmatrix import IntMatrix


class FaceMismatch(ValueError):
    pass


class DegenerateConfiguration(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class WeightLengthMismatch(ValueError):
    pass


class SubdivisionError(RuntimeError):
    pass


@dataclass(frozen=True)
class PointConfiguration:
    dim: int
    points: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        points = tuple(tuple(int(value) for value in point) for point in self.points)
        for point in points:
            if len(point) != self.dim:
                raise DimensionMismatch(f"Point {point} does not have length {self.dim}.")
        labels = tuple(int(label) for label in self.labels) if self.labels else tuple(range(len(points)))
        if len(labels) != len(points):
            raise ValueError("Need exactly one label per point.")
        if len(set(labels)) != len(labels):
            raise ValueError("Point labels must be distinct.")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_points(cls, points: Sequence[Sequence[int]], labels: Iterable[int] | None = None) -> PointConfiguration:
        point_list = [tuple(point) for point in points]
        dim = len(point_list[0]) if point_list else 0
        return cls(dim=dim, points=tuple(point_list), labels=tuple(labels) if labels is not None else ())

    @classmethod
    def from_design_matrix(cls, A: IntMatrix) -> PointConfiguration:
        return cls(dim=A.rows - 1, points=tuple(column[1:] for column in A.columns()))

    def __len__(self) -> int:
        return len(self.points)

    def position_of(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise FaceMismatch(f"Label {label} is not part of this configuration.") from exc

    def restrict(self, labels: Iterable[int]) -> PointConfiguration:
        chosen = sorted(set(labels))
        return PointConfiguration(
            dim=self.dim,
            points=tuple(self.points[self.position_of(label)] for label in chosen),
            labels=tuple(chosen),
        )


@dataclass(frozen=True)
class FaceDescriptor:
    normal: tuple[int, ...]
    offset: int
    member_indices: tuple[int, ...]
    face_dim: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", tuple(int(value) for value in self.normal))
        object.__setattr__(self, "member_indices", tuple(sorted(int(i) for i in self.member_indices)))

    @property
    def key(self) -> tuple[int, ...]:
        return self.member_indices

    def contains(self, other: FaceDescriptor) -> bool:
        return set(other.member_indices) <= set(self.member_indices)


@dataclass(frozen=True)
class Subdivision:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        cells = tuple(sorted(tuple(sorted(cell)) for cell in self.cells))
        object.__setattr__(self, "cells", cells)

    def max_cell_size(self) -> int:
        return max((len(cell) for cell in self.cells), default=0)
