from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from sympy import Matrix

from lattice.intmatrix import IntMatrix, vector_gcd
from lattice.normal_forms import smith_form

Point = tuple[int, ...]


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    differences = [[a - b for a, b in zip(point, base)] for point in points[1:]]
    if not differences[0]:
        return 0
    return IntMatrix.from_rows(differences).rank()


def as_fraction(value) -> Fraction:
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def primitive(vector: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    fractions = [as_fraction(value) for value in vector]
    denominator = lcm(*(value.denominator for value in fractions)) if fractions else 1
    integers = [int(value * denominator) for value in fractions]
    g = vector_gcd(integers)
    if g == 0:
        return tuple(integers)
    return tuple(value // g for value in integers)


def hyperplane_normal(points: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Primitive normal of the hyperplane through ``points``; None unless they span one."""
    base = points[0]
    rows = [[a - b for a, b in zip(point, base)] for point in points[1:]]
    dim = len(base)
    if not rows:
        return (1,) if dim == 1 else None
    kernel = Matrix(rows).nullspace()
    if len(kernel) != 1:
        return None
    return primitive(list(kernel[0]))


def orientation(simplex_points: Sequence[Sequence[int]], point: Sequence[int]) -> int:
    """Sign of det[v1 - v0, ..., v_{d-1} - v0, point - v0]."""
    base = simplex_points[0]
    rows = [[a - b for a, b in zip(vertex, base)] for vertex in simplex_points[1:]]
    rows.append([a - b for a, b in zip(point, base)])
    value = IntMatrix.from_rows(rows).det()
    return (value > 0) - (value < 0)


def simplex_volume(simplex_points: Sequence[Sequence[int]]) -> int:
    base = simplex_points[0]
    rows = [[a - b for a, b in zip(vertex, base)] for vertex in simplex_points[1:]]
    if not rows:
        return 1
    return abs(IntMatrix.from_rows(rows).det())


@dataclass(frozen=True)
class AffineChart:
    """Integer coordinates of a point set in the affine lattice its points generate."""

    base: Point
    rank: int
    transform: tuple[tuple[int, ...], ...]
    divisors: tuple[int, ...]
    coords: tuple[Point, ...]

    def lift_functional(self, functional: Sequence[int]) -> tuple[int, ...]:
        """Ambient primitive normal that induces ``functional`` on the chart (up to a constant)."""
        ambient = [Fraction(0)] * len(self.base)
        for k, weight in enumerate(functional):
            if not weight:
                continue
            for j, value in enumerate(self.transform[k]):
                ambient[j] += Fraction(weight * value, self.divisors[k])
        return primitive(ambient)


def affine_chart(points: Sequence[Sequence[int]]) -> AffineChart:
    base = tuple(points[0])
    if len(points) == 1 or not base:
        return AffineChart(base=base, rank=0, transform=(), divisors=(), coords=tuple(() for _ in points))
    differences = IntMatrix.from_columns([tuple(a - b for a, b in zip(point, base)) for point in points[1:]])
    form = smith_form(differences)
    rank = form.rank
    coords = [tuple(0 for _ in range(rank))]
    for j in range(len(points) - 1):
        coords.append(tuple(form.V_inverse[k, j] for k in range(rank)))
    return AffineChart(
        base=base,
        rank=rank,
        transform=tuple(form.U.row(k) for k in range(rank)),
        divisors=form.divisors,
        coords=tuple(coords),
    )


def affine_coordinates(P) -> tuple[Point, ...]:
    """Coordinates of the points of a configuration in the affine lattice they generate."""
    return affine_chart(P.points).coords
