from __future__ import annotations

import signal
import threading
import time
from contextlib import contextmanager
from typing import Iterator


class ComputationTimeout(RuntimeError):
    pass


def _round2(value: float) -> float:
    return round(float(value), 2)


def elapsed_ms(started: float) -> float:
    return _round2((time.perf_counter() - started) * 1000.0)


def _alarm_available() -> bool:
    return hasattr(signal, "setitimer") and threading.current_thread() is threading.main_thread()


@contextmanager
def time_limit(seconds: float | None) -> Iterator[None]:
    # SIGALRM only reaches the main thread; worker threads run unbounded.
    if not seconds or seconds <= 0 or not _alarm_available():
        yield
        return

    def _expire(signum, frame) -> None:
        raise ComputationTimeout(f"Computation exceeded {seconds:g}s.")

    previous = signal.signal(signal.SIGALRM, _expire)
    signal.setitimer(signal.ITIMER_REAL, float(seconds))
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)
