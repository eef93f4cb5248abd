from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from django.db import transaction

from core.timing import elapsed_ms

from .models import ComputationRow, ComputationRun

logger = logging.getLogger(__name__)

DEFAULT_HISTORY_LIMIT = 20


@dataclass(frozen=True)
class LedgerRow:
    key: str
    payload: dict[str, Any] = field(default_factory=dict)
    error: str = ""


@dataclass
class RecordedRun:
    run: ComputationRun
    status: str
    runtime_ms: float
    rows: list[LedgerRow] = field(default_factory=list)


def record_run(
    command: str,
    spec_path: str,
    seed: int,
    produce_rows: Callable[[], Sequence[LedgerRow]],
    notes: dict[str, Any] | None = None,
) -> RecordedRun:
    """Run ``produce_rows`` and persist its rows; the run's status and runtime are saved even when it raises."""
    run = ComputationRun.objects.create(
        command=command,
        spec_path=str(spec_path),
        seed=seed,
        status=ComputationRun.Status.RUNNING,
        notes=dict(notes or {}),
    )

    started = time.perf_counter()
    status = ComputationRun.Status.RUNNING
    rows: list[LedgerRow] = []
    extra: dict[str, Any] = {}

    try:
        rows = list(produce_rows())
        status = ComputationRun.Status.COMPLETED
    except Exception as exc:
        status = ComputationRun.Status.FAILED
        extra["error"] = f"{type(exc).__name__}: {exc}"
        raise
    finally:
        runtime_ms = elapsed_ms(started)
        run.status = status
        run.runtime_ms = runtime_ms
        run.notes = {**run.notes, **extra, "row_count": len(rows)}
        run.save(update_fields=["status", "runtime_ms", "notes"])

        if rows and status == ComputationRun.Status.COMPLETED:
            with transaction.atomic():
                ComputationRow.objects.bulk_create(
                    ComputationRow(run=run, position=position, key=row.key, payload=row.payload, error=row.error)
                    for position, row in enumerate(rows)
                )
        logger.info("Recorded %s run #%s: %s, %s rows.", command, run.pk, status, len(rows))

    return RecordedRun(run=run, status=run.status, runtime_ms=runtime_ms, rows=rows)


def recent_runs(limit: int = DEFAULT_HISTORY_LIMIT) -> list[ComputationRun]:
    if limit < 1:
        raise ValueError("History limit must be at least 1.")
    return list(ComputationRun.objects.all()[:limit])
