"""Date/duration helpers shared by the store, query engine, and scheduler."""

from __future__ import annotations

import re
from datetime import date, datetime, timedelta

DATETIME_FMT = "%Y-%m-%d %H:%M:%S"

_DURATION_RE = re.compile(r"(\d+)\s*(w|d|h|m|s)")
_DURATION_UNITS = {
    "w": timedelta(weeks=1),
    "d": timedelta(days=1),
    "h": timedelta(hours=1),
    "m": timedelta(minutes=1),
    "s": timedelta(seconds=1),
}


def fmt_dt(dt: datetime) -> str:
    return dt.strftime(DATETIME_FMT)


def parse_dt(s: str) -> datetime:
    s = s.strip()
    if len(s) == 10:
        return datetime.strptime(s, "%Y-%m-%d")
    return datetime.strptime(s, DATETIME_FMT)


def parse_date(s: str) -> date:
    return datetime.strptime(s.strip(), "%Y-%m-%d").date()


def sunday_of(d: date) -> date:
    """Start of the Sunday-to-Saturday week containing `d`."""
    return d - timedelta(days=(d.weekday() + 1) % 7)


def month_of(d: date) -> date:
    return d.replace(day=1)


def next_month(d: date) -> date:
    return date(d.year + 1, 1, 1) if d.month == 12 else date(d.year, d.month + 1, 1)


def weeks_overlapping(start: date, end: date) -> list[tuple[date, date]]:
    """Every Sunday–Saturday week touching [start, end], as (first, last) days."""
    out = []
    w = sunday_of(start)
    while w <= end:
        out.append((w, w + timedelta(days=6)))
        w += timedelta(days=7)
    return out


def months_overlapping(start: date, end: date) -> list[tuple[date, date]]:
    out = []
    m = month_of(start)
    while m <= end:
        nm = next_month(m)
        out.append((m, nm - timedelta(days=1)))
        m = nm
    return out


def parse_duration(text: str) -> timedelta:
    """Parse "365d", "2h30m", "90s" style durations; bare numbers are minutes."""
    text = text.strip().lower()
    if text.isdigit():
        return timedelta(minutes=int(text))
    total = timedelta()
    matched = 0
    for m in _DURATION_RE.finditer(text):
        total += int(m.group(1)) * _DURATION_UNITS[m.group(2)]
        matched += len(m.group(0))
    if matched != len(re.sub(r"\s", "", text)) or total == timedelta():
        raise ValueError(f"cannot parse duration {text!r}")
    return total
