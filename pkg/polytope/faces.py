from __future__ import annotations

import logging
from collections import Counter

import numpy as np
from scipy.spatial import ConvexHull

from .configuration import FaceDescriptor, FaceMismatch, PointConfiguration, SubdivisionError
from .geometry import affine_chart, affine_rank, dot, hyperplane_normal, primitive

logger = logging.getLogger(__name__)


def _supporting(coords, normal) -> tuple[tuple[int, ...], int, frozenset[int]] | None:
    values = [dot(normal, point) for point in coords]
    low, high = min(values), max(values)
    if low == high:
        return None
    return (normal, low, frozenset(i for i, v in enumerate(values) if v == low))


def _facets_on_line(coords) -> list[tuple[tuple[int, ...], int, frozenset[int]]]:
    facets = []
    for normal in ((1,), (-1,)):
        supported = _supporting(coords, normal)
        if supported is not None:
            facets.append(supported)
    return facets


def hull_facets(coords, rank: int) -> list[tuple[tuple[int, ...], int, frozenset[int]]]:
    """Facets of a full-dimensional integer point set as (inner normal, offset, tight positions).

    Qhull proposes candidate simplices; each is rebuilt and checked in exact arithmetic.
    """
    if rank == 1:
        return _facets_on_line(coords)

    hull = ConvexHull(np.array(coords, dtype=float))
    found: dict[frozenset[int], tuple[tuple[int, ...], int, frozenset[int]]] = {}
    for simplex in hull.simplices:
        vertices = [coords[i] for i in simplex]
        normal = hyperplane_normal(vertices)
        if normal is None:
            continue
        anchor = dot(normal, vertices[0])
        values = [dot(normal, point) for point in coords]
        if anchor == max(values):
            normal = tuple(-value for value in normal)
            anchor = -anchor
        elif anchor != min(values):
            raise SubdivisionError("Hull candidate does not support the point set; input is numerically unstable.")
        members = frozenset(i for i, point in enumerate(coords) if dot(normal, point) == anchor)
        if members not in found:
            found[members] = (normal, anchor, members)
    return list(found.values())


def _face_closure(facet_sets: list[frozenset[int]]) -> set[frozenset[int]]:
    faces = set(facet_sets)
    queue = list(facet_sets)
    while queue:
        face = queue.pop()
        for facet in facet_sets:
            meet = face & facet
            if meet and meet != face and meet not in faces:
                faces.add(meet)
                queue.append(meet)
    return faces


def _lifted_facets(P: PointConfiguration, chart) -> dict[frozenset[int], tuple[int, ...]]:
    return {members: chart.lift_functional(normal) for normal, _, members in hull_facets(chart.coords, chart.rank)}


def _describe(P: PointConfiguration, lifted: dict[frozenset[int], tuple[int, ...]], members: frozenset[int]) -> FaceDescriptor:
    containing = [normal for facet, normal in lifted.items() if members <= facet]
    normal = primitive([sum(column) for column in zip(*containing)])
    supported = _supporting(P.points, normal)
    if supported is None or supported[2] != members:
        raise FaceMismatch(f"Points {sorted(P.labels[i] for i in members)} are not cut out as a face.")
    return FaceDescriptor(
        normal=normal,
        offset=supported[1],
        member_indices=tuple(P.labels[i] for i in members),
        face_dim=affine_rank([P.points[i] for i in sorted(members)]),
    )


def face_lattice(P: PointConfiguration) -> list[FaceDescriptor]:
    """All nonempty faces of conv(P), the full polytope included, largest first."""
    if not P.points:
        raise ValueError("Point configuration is empty.")

    chart = affine_chart(P.points)
    full = FaceDescriptor(
        normal=(0,) * P.dim,
        offset=0,
        member_indices=P.labels,
        face_dim=chart.rank,
    )
    if chart.rank == 0:
        return [full]

    lifted = _lifted_facets(P, chart)
    descriptors = [full]
    for members in sorted(_face_closure(list(lifted)), key=lambda s: (-len(s), sorted(s))):
        descriptors.append(_describe(P, lifted, members))

    descriptors.sort(key=lambda face: (-face.face_dim, face.member_indices))
    logger.debug("Face lattice of %s points in dimension %s: %s faces.", len(P), chart.rank, len(descriptors))
    return descriptors


def facets(P: PointConfiguration) -> list[FaceDescriptor]:
    if not P.points:
        raise ValueError("Point configuration is empty.")
    chart = affine_chart(P.points)
    if chart.rank == 0:
        return []
    lifted = _lifted_facets(P, chart)
    found = [_describe(P, lifted, members) for members in lifted]
    return sorted(found, key=lambda face: face.member_indices)


def f_vector(faces: list[FaceDescriptor], include_full: bool = False) -> tuple[int, ...]:
    if not faces:
        return ()
    top = max(face.face_dim for face in faces)
    counts = Counter(face.face_dim for face in faces)
    upper = top + 1 if include_full else top
    return tuple(counts.get(k, 0) for k in range(upper))


def check_face(P: PointConfiguration, F: FaceDescriptor) -> None:
    if len(F.normal) != P.dim:
        raise FaceMismatch(f"Face normal has length {len(F.normal)}, configuration dimension is {P.dim}.")
    tight = []
    for label, point in zip(P.labels, P.points):
        value = dot(F.normal, point)
        if value < F.offset:
            raise FaceMismatch(f"Point {label} violates the supporting inequality of the face.")
        if value == F.offset:
            tight.append(label)
    if tuple(sorted(tight)) != F.member_indices:
        raise FaceMismatch("Face members differ from the points where its inequality is tight.")


def lattice_points_of_face(P: PointConfiguration, F: FaceDescriptor) -> list[int]:
    check_face(P, F)
    return list(F.member_indices)


def face_from_members(P: PointConfiguration, labels) -> FaceDescriptor:
    """Look up the face whose point set is exactly ``labels``."""
    wanted = frozenset(P.position_of(label) for label in labels)
    if not wanted:
        raise FaceMismatch("A face needs at least one point.")
    chart = affine_chart(P.points)
    if len(wanted) == len(P) or chart.rank == 0:
        if len(wanted) != len(P):
            raise FaceMismatch("A point configuration of dimension zero has only itself as a face.")
        return face_lattice(P)[0]
    lifted = _lifted_facets(P, chart)
    containing = [facet for facet in lifted if wanted <= facet]
    if not containing:
        raise FaceMismatch(f"Columns {sorted(labels)} lie on no facet, so they are not a proper face.")
    return _describe(P, lifted, wanted)
