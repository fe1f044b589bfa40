"""Lossy URL and title normalization used for story deduplication.

The canonical URL rendering is scheme-less: host (lowercased, leading www.
labels stripped, default ports dropped) + path (trailing slashes removed) +
sorted query with tracking parameters removed. Both normalizers are
idempotent: f(f(x)) == f(x).
"""

from __future__ import annotations

import re
from urllib.parse import parse_qsl, urlencode, urlsplit

from .errors import MalformedUrlError

# Query parameters that never affect content identity: utm_* campaign tags,
# click ids, referral markers, and session-id-shaped names.
TRACKING_PARAM_RE = re.compile(
    r"^(utm_.*|fbclid|gclid|ref|sid|sessionid|session_id|phpsessid|jsessionid"
    r"|cfid|cftoken|mc_cid|mc_eid)$",
    re.IGNORECASE,
)

_SEPARATORS_RE = re.compile(r"\s*[:|\-]\s*")

# Second-level labels that act as public suffixes; enough for desk-scale
# corpora, not the full Public Suffix List.
_TWO_LEVEL_SUFFIXES = {
    "co.uk", "org.uk", "ac.uk", "gov.uk", "net.uk", "me.uk",
    "com.au", "net.au", "org.au", "gov.au",
    "com.br", "org.br", "gov.br", "net.br",
    "co.jp", "or.jp", "ne.jp", "go.jp",
    "co.in", "org.in", "gov.in", "net.in", "ac.in",
    "co.za", "org.za", "gov.za",
    "com.mx", "org.mx", "com.ar", "com.co", "com.tr", "com.cn",
    "co.kr", "or.kr", "co.nz", "org.nz", "govt.nz",
}


def normalize_url(url: str) -> str:
    """Canonicalize `url`; raises MalformedUrlError naming the bad component."""
    if url is None:
        raise MalformedUrlError(str(url), "empty input")
    trimmed = url.strip()
    if not trimmed:
        raise MalformedUrlError(url, "empty input")
    if re.search(r"[\s\x00-\x1f]", trimmed):
        raise MalformedUrlError(url, "whitespace or control character")

    # Scheme is optional; coerce everything to one canonical scheme before
    # parsing so "example.com/a" and "https://example.com/a" agree.
    without_scheme = re.sub(r"^[a-zA-Z][a-zA-Z0-9+.-]*://", "", trimmed)
    try:
        parts = urlsplit("http://" + without_scheme)
        host = parts.hostname
    except ValueError:
        raise MalformedUrlError(url, "host") from None
    try:
        port = parts.port
    except ValueError:
        raise MalformedUrlError(url, "port") from None

    if not host or "." not in host.strip("."):
        raise MalformedUrlError(url, "host")
    host = host.lower().strip(".")
    while host.startswith("www."):
        host = host[4:]
    if not host:
        raise MalformedUrlError(url, "host")
    if port is not None and port not in (80, 443):
        host = f"{host}:{port}"

    path = parts.path.rstrip("/")

    kept = [
        (k, v)
        for k, v in parse_qsl(parts.query, keep_blank_values=True)
        if not TRACKING_PARAM_RE.match(k)
    ]
    kept.sort(key=lambda kv: kv[0])
    query = urlencode(kept)

    out = host + path
    if query:
        out += "?" + query
    return out


def normalize_title(title: str) -> str:
    """Reduce a headline to its longest ':'/'|'/'-'-separated segment, lowercased."""
    if not title:
        return ""
    segments = _SEPARATORS_RE.split(title)
    best = max(segments, key=len)  # max() keeps the leftmost on ties
    return " ".join(best.lower().split())


def registrable_domain(host: str) -> str:
    """Collapse a hostname to its registrable domain ("sub.example.co.uk" -> "example.co.uk")."""
    host = host.lower().strip(".")
    labels = host.split(".")
    if len(labels) <= 2:
        return host
    if ".".join(labels[-2:]) in _TWO_LEVEL_SUFFIXES:
        return ".".join(labels[-3:])
    return ".".join(labels[-2:])


def url_host(url: str) -> str:
    """Hostname of a URL (scheme optional); empty string when there is none."""
    without_scheme = re.sub(r"^[a-zA-Z][a-zA-Z0-9+.-]*://", "", url.strip())
    try:
        host = (urlsplit("http://" + without_scheme).hostname or "").strip(".")
    except ValueError:
        return ""
    if re.search(r"\s", host) or "." not in host:
        return ""
    return host
