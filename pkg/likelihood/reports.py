from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Sequence

from core.jobs import JobOutcome, run_jobs
from core.timing import elapsed_ms
from polysolve.groebner import DEFAULT_OPTIONS, SolverOptions
from polytope.configuration import FaceDescriptor, FaceMismatch
from polytope.faces import face_from_members, face_lattice
from polytope.volume import normalized_volume
from toric.builders import facial_submodel
from toric.scaled_model import ScaledModel

from .likelihood_engine import ml_degree_count

logger = logging.getLogger(__name__)


class NotAFlag(ValueError):
    pass


@dataclass(frozen=True)
class MLReportRow:
    face: tuple[int, ...]
    dimension: int
    ml_degree: int | None = None
    degree: int | None = None
    quotient_dim: int | None = None
    note: str = ""
    error: str = ""
    runtime_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.error


@dataclass(frozen=True)
class MLReport:
    rows: tuple[MLReportRow, ...]
    ml_degree: int | None
    seed: int
    violations: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()
    runtime_ms: float = 0.0

    @property
    def failed(self) -> bool:
        return bool(self.rows) and all(not row.ok for row in self.rows)

    def ml_degrees(self) -> tuple[int | None, ...]:
        return tuple(row.ml_degree for row in self.rows)

    def degrees(self) -> tuple[int | None, ...]:
        return tuple(row.degree for row in self.rows)


def _face_model(M: ScaledModel, F: FaceDescriptor) -> ScaledModel:
    return M if len(F.member_indices) == M.n else facial_submodel(M, F)


def _face_job(M: ScaledModel, F: FaceDescriptor, seed: int, options: SolverOptions):
    def run():
        sub = _face_model(M, F)
        count = ml_degree_count(sub, seed=seed, options=options, stream=list(F.member_indices))
        return count, normalized_volume(sub.configuration())

    return run


def _row(F: FaceDescriptor, outcome: JobOutcome) -> MLReportRow:
    if not outcome.ok:
        return MLReportRow(face=F.member_indices, dimension=F.face_dim, error=outcome.error, runtime_ms=outcome.runtime_ms)
    count, degree = outcome.value
    note = f"distinct {count.distinct} < quotient dimension {count.quotient_dim}" if count.has_multiplicity else ""
    return MLReportRow(
        face=F.member_indices,
        dimension=F.face_dim,
        ml_degree=count.distinct,
        degree=degree,
        quotient_dim=count.quotient_dim,
        note=note,
        runtime_ms=outcome.runtime_ms,
    )


def _solve_faces(
    M: ScaledModel,
    faces: Sequence[FaceDescriptor],
    seed: int,
    options: SolverOptions,
    workers: int,
    timeout: float | None,
) -> list[MLReportRow]:
    jobs = [(F.member_indices, _face_job(M, F, seed, options)) for F in faces]
    rows = []
    for F, outcome in zip(faces, run_jobs(jobs, workers=workers, timeout=timeout)):
        row = _row(F, outcome)
        logger.info(
            "Face of dimension %s with %s columns: ml degree %s, degree %s%s.",
            row.dimension,
            len(row.face),
            row.ml_degree,
            row.degree,
            f" ({row.error})" if row.error else "",
        )
        rows.append(row)
    return rows


def _violations(rows: Sequence[MLReportRow], pairs: Sequence[tuple[int, int]]) -> tuple:
    found = []
    for upper, lower in pairs:
        big, small = rows[upper], rows[lower]
        if big.ml_degree is None or small.ml_degree is None:
            continue
        if small.ml_degree > big.ml_degree:
            logger.error("Face %s has ml degree %s above its coface's %s.", small.face, small.ml_degree, big.ml_degree)
            found.append((big.face, small.face))
    return tuple(found)


def monotonicity_report(
    M: ScaledModel,
    depth: int = 1,
    seed: int = 0,
    options: SolverOptions = DEFAULT_OPTIONS,
    workers: int = 1,
    timeout: float | None = None,
) -> MLReport:
    """ML degrees of the model and of every face down to codimension ``depth``."""
    if depth < 0 or depth > M.d:
        raise ValueError(f"Depth must lie between 0 and the model dimension {M.d}.")
    started = time.perf_counter()
    faces = [F for F in face_lattice(M.configuration()) if F.face_dim >= M.d - depth]
    rows = _solve_faces(M, faces, seed, options, workers, timeout)
    pairs = [
        (i, j)
        for i, big in enumerate(faces)
        for j, small in enumerate(faces)
        if big.face_dim == small.face_dim + 1 and big.contains(small)
    ]
    return MLReport(
        rows=tuple(rows),
        ml_degree=rows[0].ml_degree,
        seed=seed,
        violations=_violations(rows, pairs),
        runtime_ms=elapsed_ms(started),
    )


def flag_faces(M: ScaledModel, flag: Sequence[Sequence[int]]) -> list[FaceDescriptor]:
    """Face descriptors for a chain of column sets, each a proper face of the one before."""
    if not flag:
        raise NotAFlag("A flag needs at least one column set.")
    P = M.configuration()
    faces = []
    previous: list[int] | None = None
    for members in flag:
        members = sorted(int(j) for j in members)
        if previous is not None and (not set(members) < set(previous)):
            raise NotAFlag(f"Columns {members} are not a proper subset of {previous}.")
        try:
            if previous is not None:
                face_from_members(P.restrict(previous), members)
            faces.append(face_from_members(P, members))
        except FaceMismatch as exc:
            raise NotAFlag(f"Columns {members} do not form a face: {exc}") from exc
        previous = members
    return faces


def flag_report(
    M: ScaledModel,
    flag: Sequence[Sequence[int]],
    seed: int = 0,
    options: SolverOptions = DEFAULT_OPTIONS,
    workers: int = 1,
    timeout: float | None = None,
) -> MLReport:
    started = time.perf_counter()
    faces = flag_faces(M, flag)
    rows = _solve_faces(M, faces, seed, options, workers, timeout)
    return MLReport(
        rows=tuple(rows),
        ml_degree=rows[0].ml_degree,
        seed=seed,
        violations=_violations(rows, [(k, k + 1) for k in range(len(rows) - 1)]),
        runtime_ms=elapsed_ms(started),
    )
