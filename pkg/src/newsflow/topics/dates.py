"""Publication-date guessing for spidered stories."""

from __future__ import annotations

import re
from datetime import datetime, timedelta, timezone

from ..textproc.htmltree import decode_html, parse_html

META_DATE_KEYS = ("article:published_time", "datepublished", "date")

_URL_SLASH_DATE_RE = re.compile(r"/(\d{4})/(\d{1,2})/(\d{1,2})(?:/|$)")
_URL_DASH_DATE_RE = re.compile(r"/(\d{4})-(\d{1,2})-(\d{1,2})(?:[/.]|$|\b)")

EARLIEST_PLAUSIBLE = datetime(1995, 1, 1)


def guess_date(html: bytes | str, url: str, fallback: datetime, now: datetime | None = None) -> datetime:
    """Guess when a story was published.

    Precedence: machine-readable meta tags, then <time datetime>, then a
    /YYYY/MM/DD/ or /YYYY-MM-DD/ pattern in the URL path, then `fallback`.
    Dates outside [1995, now + 1 day] are rejected to the next rule.
    """
    now = now or datetime.utcnow()
    latest = now + timedelta(days=1)

    root = parse_html(decode_html(html))

    for meta in root.find_all("meta"):
        key = (meta.attr("property") or meta.attr("name") or meta.attr("itemprop")).lower()
        if key in META_DATE_KEYS:
            parsed = _parse(meta.attr("content"))
            if parsed and EARLIEST_PLAUSIBLE <= parsed <= latest:
                return parsed

    for el in root.find_all("time"):
        parsed = _parse(el.attr("datetime"))
        if parsed and EARLIEST_PLAUSIBLE <= parsed <= latest:
            return parsed

    for pattern in (_URL_SLASH_DATE_RE, _URL_DASH_DATE_RE):
        m = pattern.search(url)
        if m:
            try:
                parsed = datetime(int(m.group(1)), int(m.group(2)), int(m.group(3)))
            except ValueError:
                continue
            if EARLIEST_PLAUSIBLE <= parsed <= latest:
                return parsed

    return fallback


def _parse(value: str) -> datetime | None:
    value = value.strip()
    if not value:
        return None
    try:
        dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        return None
    if dt.tzinfo is not None:
        dt = dt.astimezone(timezone.utc).replace(tzinfo=None)
    return dt.replace(microsecond=0)
