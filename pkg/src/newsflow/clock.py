"""Clock abstraction so crawl scheduling can run against simulated time."""

from __future__ import annotations

import time
from datetime import datetime, timedelta


class Clock:
    def now(self) -> datetime:
        raise NotImplementedError

    def sleep(self, seconds: float) -> None:
        raise NotImplementedError


class SystemClock(Clock):
    """Wall clock; times are naive UTC."""

    def now(self) -> datetime:
        return datetime.utcnow().replace(microsecond=0)

    def sleep(self, seconds: float) -> None:
        time.sleep(seconds)


class SimClock(Clock):
    """Deterministic clock for tests and fixture runs; sleep advances time."""

    def __init__(self, start: datetime):
        self._now = start

    def now(self) -> datetime:
        return self._now

    def sleep(self, seconds: float) -> None:
        self._now += timedelta(seconds=seconds)

    def advance(self, delta: timedelta) -> None:
        self._now += delta

    def advance_to(self, instant: datetime) -> None:
        if instant > self._now:
            self._now = instant
