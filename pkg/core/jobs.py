from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Sequence

from .timing import elapsed_ms, time_limit

logger = logging.getLogger(__name__)

Job = tuple[Hashable, Callable[[], Any]]


@dataclass(frozen=True)
class JobOutcome:
    key: Hashable
    value: Any = None
    error: str = ""
    runtime_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.error


def describe_error(exc: BaseException) -> str:
    return f"{type(exc).__name__}: {exc}"


def _run_one(key: Hashable, job: Callable[[], Any], timeout: float | None) -> JobOutcome:
    started = time.perf_counter()
    try:
        with time_limit(timeout):
            value = job()
    except (ValueError, RuntimeError) as exc:
        logger.warning("Job %s failed: %s", key, exc)
        return JobOutcome(key=key, error=describe_error(exc), runtime_ms=elapsed_ms(started))
    return JobOutcome(key=key, value=value, runtime_ms=elapsed_ms(started))


def run_jobs(jobs: Sequence[Job], workers: int = 1, timeout: float | None = None) -> list[JobOutcome]:
    """Run keyed zero-argument jobs; outcomes come back in submission order.

    ``timeout`` applies per job and only when running sequentially.
    """
    if workers <= 1 or len(jobs) <= 1:
        return [_run_one(key, job, timeout) for key, job in jobs]
    if timeout:
        logger.info("Per-job timeout of %ss is not enforced with %s workers.", timeout, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_one, key, job, None) for key, job in jobs]
        return [future.result() for future in futures]
