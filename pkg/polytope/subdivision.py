from __future__ import annotations

import logging
from math import lcm
from typing import Sequence

from .configuration import (
    DimensionMismatch,
    PointConfiguration,
    Subdivision,
    SubdivisionError,
    WeightLengthMismatch,
)
from .faces import hull_facets
from .geometry import affine_chart, affine_rank, as_fraction
from .volume import lattice_volume

logger = logging.getLogger(__name__)


def cayley_configuration(configurations: Sequence[PointConfiguration], drop_last: bool = False) -> PointConfiguration:
    """Cayley embedding: point p of the i-th configuration becomes (p, e_i).

    With ``drop_last`` the final block coordinate is omitted so the result is full-dimensional.
    """
    if not configurations:
        raise ValueError("Cayley embedding needs at least one configuration.")
    dims = {configuration.dim for configuration in configurations}
    if len(dims) != 1:
        raise DimensionMismatch(f"Configurations live in different dimensions {sorted(dims)}.")
    width = len(configurations) - 1 if drop_last else len(configurations)
    points = []
    for block, configuration in enumerate(configurations):
        marker = tuple(1 if k == block else 0 for k in range(width))
        points.extend(point + marker for point in configuration.points)
    return PointConfiguration(dim=dims.pop() + width, points=tuple(points))


def _integer_weights(weights: Sequence) -> list[int]:
    fractions = [as_fraction(weight) for weight in weights]
    scale = lcm(*(value.denominator for value in fractions)) if fractions else 1
    return [int(value * scale) for value in fractions]


def regular_subdivision(P: PointConfiguration, weights: Sequence) -> Subdivision:
    """Subdivision of P induced by lifting point i to height weights[i] and projecting the lower hull.

    Cells are sets of positions into ``P.points``. Coplanar lower facets merge into one cell.
    """
    if len(weights) != len(P):
        raise WeightLengthMismatch(f"Got {len(weights)} weights for {len(P)} points.")
    if not P.points:
        return Subdivision(cells=())

    chart = affine_chart(P.points)
    heights = _integer_weights(weights)
    lifted = [coords + (height,) for coords, height in zip(chart.coords, heights)]
    everything = tuple(range(len(P)))
    if chart.rank == 0 or affine_rank(lifted) == chart.rank:
        return Subdivision(cells=(everything,))

    cells = [
        tuple(sorted(members))
        for normal, _, members in hull_facets(lifted, chart.rank + 1)
        if normal[-1] > 0
    ]
    total = lattice_volume(chart.coords)
    covered = sum(lattice_volume([chart.coords[i] for i in cell]) for cell in cells)
    if covered != total:
        raise SubdivisionError(f"Lower hull cells cover volume {covered} of {total}.")

    logger.debug("Regular subdivision of %s points: %s cells.", len(P), len(cells))
    return Subdivision(cells=tuple(cells))


def is_triangulation(S: Subdivision, P: PointConfiguration) -> bool:
    """True when every cell is a simplex."""
    return all(
        len(cell) == affine_rank([P.points[i] for i in cell]) + 1
        for cell in S.cells
    )
