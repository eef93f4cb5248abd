from __future__ import annotations

from typing import Sequence

from .configuration import DegenerateConfiguration, PointConfiguration
from .geometry import affine_chart, affine_rank, orientation, simplex_volume


def _initial_simplex(points: Sequence[Sequence[int]], order: Sequence[int], dim: int) -> list[int]:
    chosen: list[int] = []
    for index in order:
        candidate = chosen + [index]
        if affine_rank([points[i] for i in candidate]) == len(candidate) - 1:
            chosen = candidate
            if len(chosen) == dim + 1:
                break
    return chosen


def _is_beyond(points, ridge: frozenset[int], opposite: int, index: int) -> bool:
    vertices = [points[i] for i in sorted(ridge)]
    side = orientation(vertices, points[index])
    return side != 0 and side == -orientation(vertices, points[opposite])


def placing_triangulation(points: Sequence[Sequence[int]], order: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Placing triangulation of a full-dimensional point set, inserting points in ``order``."""
    if not points:
        raise DegenerateConfiguration("No points to triangulate.")
    dim = len(points[0])
    order = list(range(len(points))) if order is None else list(order)
    if affine_rank(points) != dim:
        raise DegenerateConfiguration(f"Points do not affinely span dimension {dim}.")
    if dim == 0:
        return [(order[0],)]

    start = _initial_simplex(points, order, dim)
    simplices = [tuple(sorted(start))]
    boundary: dict[frozenset[int], int] = {frozenset(start) - {v}: v for v in start}
    placed = set(start)

    for index in order:
        if index in placed:
            continue
        placed.add(index)
        visible = [ridge for ridge, opposite in boundary.items() if _is_beyond(points, ridge, opposite, index)]
        for ridge in visible:
            boundary.pop(ridge)
            simplices.append(tuple(sorted(ridge | {index})))
            for vertex in ridge:
                new_ridge = (ridge - {vertex}) | {index}
                if new_ridge in boundary:
                    del boundary[new_ridge]
                else:
                    boundary[new_ridge] = vertex
    return simplices


def triangulation_volume(points: Sequence[Sequence[int]], simplices: Sequence[Sequence[int]]) -> int:
    return sum(simplex_volume([points[i] for i in simplex]) for simplex in simplices)


def lattice_volume(points: Sequence[Sequence[int]], order: Sequence[int] | None = None) -> int:
    return triangulation_volume(points, placing_triangulation(points, order))


def normalized_volume(P: PointConfiguration, order: Sequence[int] | None = None) -> int:
    """d! times the Euclidean volume of conv(P), as an exact integer."""
    if not P.points:
        raise DegenerateConfiguration("Point configuration is empty.")
    return lattice_volume(P.points, order)


def relative_volume(P: PointConfiguration) -> int:
    """Normalized volume of conv(P) measured in the affine lattice its points generate."""
    if not P.points:
        raise DegenerateConfiguration("Point configuration is empty.")
    chart = affine_chart(P.points)
    if chart.rank == 0:
        return 1
    return lattice_volume(chart.coords)
