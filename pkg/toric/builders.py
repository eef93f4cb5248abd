from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from core.rationals import parse_rationals
from core.seeding import draw_ints
from lattice.intmatrix import IntMatrix
from lattice.normal_forms import normalize_design_matrix
from polytope.configuration import FaceDescriptor
from polytope.faces import check_face
from polytope.geometry import affine_rank

from .scaled_model import ScaledModel, SpanCollapse, resolve_scaling

logger = logging.getLogger(__name__)


def model_from_columns(points: Sequence[Sequence[int]], scaling="ones", provenance: str = "") -> ScaledModel:
    A = IntMatrix.from_columns([(1, *point) for point in points])
    return ScaledModel(A=A, c=resolve_scaling(scaling, A.cols), provenance=provenance)


def independence_model(m: int, k: int, scaling="ones") -> ScaledModel:
    """m x k independence model; rows are ones, then indicators of the first m-1 row states and first k-1 column states."""
    if m < 2 or k < 2:
        raise ValueError("Independence model needs at least two states per variable.")
    states = list(product(range(m), range(k)))
    rows = [[1] * len(states)]
    rows += [[1 if i == a else 0 for i, _ in states] for a in range(m - 1)]
    rows += [[1 if j == b else 0 for _, j in states] for b in range(k - 1)]
    A = IntMatrix.from_rows(rows)
    return ScaledModel(A=A, c=resolve_scaling(scaling, A.cols), provenance=f"independence {m}x{k}")


def dilated_cube_model(dim: int, dilation: int, scaling="ones") -> ScaledModel:
    if dim < 1 or dilation < 1:
        raise ValueError("Cube needs dim >= 1 and dilation >= 1.")
    points = list(product(range(dilation + 1), repeat=dim))
    return model_from_columns(points, scaling, provenance=f"{dilation}-dilated {dim}-cube")


def facial_submodel(M: ScaledModel, F: FaceDescriptor) -> ScaledModel:
    """Restrict (A, c) to the columns on F and bring A_F back to full rank with lattice index one."""
    check_face(M.configuration(), F)
    columns = list(F.member_indices)
    A_F = normalize_design_matrix(M.A.select_columns(columns))
    return ScaledModel(
        A=A_F,
        c=tuple(M.c[j] for j in columns),
        provenance=f"{M.provenance} | face {columns}".strip(),
    )


def delete_columns(M: ScaledModel, indices: Iterable[int]) -> ScaledModel:
    dropped = set(indices)
    kept = [j for j in range(M.n) if j not in dropped]
    if not dropped:
        return M
    if not kept:
        raise SpanCollapse("Cannot delete every column.")
    points = M.exponents
    if affine_rank([points[j] for j in kept]) != affine_rank(points):
        raise SpanCollapse("Remaining columns no longer span the polytope's affine hull; use facial_submodel for faces.")
    return ScaledModel(
        A=normalize_design_matrix(M.A.select_columns(kept)),
        c=tuple(M.c[j] for j in kept),
        provenance=f"{M.provenance} | without {sorted(dropped)}".strip(),
    )


def pyramid_model(M: ScaledModel, apex_scaling=1) -> ScaledModel:
    """Pyramid of height one over conv(A) with the apex appended as the last column."""
    (apex,) = parse_rationals([apex_scaling])
    rows = [list(M.A.row(0)) + [1]]
    rows += [list(M.A.row(i)) + [0] for i in range(1, M.A.rows)]
    rows.append([0] * M.n + [1])
    return ScaledModel(A=IntMatrix.from_rows(rows), c=M.c + (apex,), provenance=f"pyramid over {M.provenance}".strip())


def rescale_by_torus(M: ScaledModel, torus_point: Sequence) -> ScaledModel:
    """Replace c_j by c_j * prod_i lambda_i ** a_ij over the non-homogenizing rows."""
    lam = parse_rationals(torus_point)
    if len(lam) != M.d:
        raise ValueError(f"Torus point has {len(lam)} coordinates, model dimension is {M.d}.")
    if any(value == 0 for value in lam):
        raise ValueError("Torus point coordinates must be nonzero.")
    scaled = []
    for c_j, exponent in zip(M.c, M.exponents):
        factor = Fraction(1)
        for value, power in zip(lam, exponent):
            factor *= value**power
        scaled.append(c_j * factor)
    return ScaledModel(A=M.A, c=tuple(scaled), provenance=M.provenance)


def random_scaling(rng: np.random.Generator, count: int, low: int = 1, high: int = 5) -> tuple[Fraction, ...]:
    return tuple(Fraction(value) for value in draw_ints(rng, count, low, high))


def random_model(rng: np.random.Generator, dim: int, max_columns: int, max_scaling: int = 5, box: int = 2) -> ScaledModel:
    """Origin, unit vectors and random extra lattice points in [0, box]^dim, with scalings in 1..max_scaling."""
    if max_columns < dim + 1:
        raise ValueError(f"A {dim}-dimensional model needs at least {dim + 1} columns.")
    points = [tuple(0 for _ in range(dim))]
    points += [tuple(1 if i == k else 0 for i in range(dim)) for k in range(dim)]
    seen = set(points)
    target = int(rng.integers(dim + 1, max_columns, endpoint=True))
    candidates = [point for point in product(range(box + 1), repeat=dim) if point not in seen]
    order = rng.permutation(len(candidates))
    for position in order[: max(0, target - len(points))]:
        points.append(candidates[int(position)])
    scaling = random_scaling(rng, len(points), 1, max_scaling)
    logger.debug("Random model: dim %s, %s columns.", dim, len(points))
    return model_from_columns(points, scaling, provenance=f"random dim {dim}")
