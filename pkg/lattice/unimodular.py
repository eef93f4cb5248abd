from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .intmatrix import IntMatrix, vector_gcd
from .normal_forms import complete_to_unimodular

if TYPE_CHECKING:
    from polytope.configuration import FaceDescriptor


class NotAFacet(ValueError):
    pass


@dataclass(frozen=True)
class UnimodularAffineMap:
    linear_part: IntMatrix
    translation: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.linear_part.rows != self.linear_part.cols:
            raise ValueError("Linear part must be square.")
        if len(self.translation) != self.linear_part.rows:
            raise ValueError("Translation length does not match the linear part.")
        if not self.linear_part.is_unimodular():
            raise ValueError("Linear part must have determinant +1 or -1.")
        object.__setattr__(self, "translation", tuple(int(value) for value in self.translation))

    @property
    def dim(self) -> int:
        return self.linear_part.rows

    def is_identity(self) -> bool:
        return self.linear_part == IntMatrix.identity(self.dim) and not any(self.translation)

    def apply(self, point: Sequence[int]) -> tuple[int, ...]:
        image = self.linear_part.apply(point)
        return tuple(a + b for a, b in zip(image, self.translation))

    def apply_to_design_matrix(self, A: IntMatrix) -> IntMatrix:
        """Transform the non-homogenizing rows of A; the all-ones row is kept."""
        if A.rows != self.dim + 1:
            raise ValueError(f"Design matrix has {A.rows - 1} coordinate rows, map acts on {self.dim}.")
        images = [self.apply(column[1:]) for column in A.columns()]
        return IntMatrix.from_rows(
            [list(A.row(0)), *([image[i] for image in images] for i in range(self.dim))],
            cols=A.cols,
        )


def _linear_part_for_normal(normal: Sequence[int]) -> IntMatrix:
    dim = len(normal)
    support = [i for i, value in enumerate(normal) if value]
    if len(support) == 1 and abs(normal[support[0]]) == 1:
        k = support[0]
        rows = [[1 if j == i else 0 for j in range(dim)] for i in range(dim) if i != k]
        rows.append(list(normal))
        return IntMatrix.from_rows(rows, cols=dim)
    completed = complete_to_unimodular(normal).to_rows()
    return IntMatrix.from_rows(completed[1:] + completed[:1], cols=dim)


def facet_normalization(A: IntMatrix, F: FaceDescriptor) -> UnimodularAffineMap:
    """Affine unimodular map putting conv(A) in the nonnegative orthant with F on the last coordinate hyperplane."""
    dim = A.rows - 1
    if F.face_dim != dim - 1:
        raise NotAFacet(f"Face has dimension {F.face_dim}, a facet of this polytope has dimension {dim - 1}.")
    if len(F.normal) != dim:
        raise NotAFacet(f"Face normal has length {len(F.normal)}, expected {dim}.")

    g = vector_gcd(F.normal)
    if g == 0:
        raise NotAFacet("Face normal is zero.")
    normal = tuple(value // g for value in F.normal)
    points = [column[1:] for column in A.columns()]
    heights = [sum(a * b for a, b in zip(normal, point)) for point in points]
    offset = min(heights)
    if {j for j, h in enumerate(heights) if h == offset} != set(F.member_indices):
        raise NotAFacet("Supporting functional is not tight exactly on the face members.")

    linear = _linear_part_for_normal(normal)
    images = [linear.apply(point) for point in points]
    translation = [-min(image[i] for image in images) for i in range(dim - 1)]
    translation.append(-offset)
    return UnimodularAffineMap(linear_part=linear, translation=tuple(translation))
