"""Syndicated feed parsing: RSS 2.0, Atom, and RDF (RSS 1.0)."""

from __future__ import annotations

import email.utils
import logging
import xml.etree.ElementTree as ET
from datetime import datetime, timezone

from ..errors import FeedParseError
from ..models import FeedItem

log = logging.getLogger(__name__)

NS_ATOM = "{http://www.w3.org/2005/Atom}"
NS_RSS1 = "{http://purl.org/rss/1.0/}"
NS_RDF = "{http://www.w3.org/1999/02/22-rdf-syntax-ns#}"
NS_DC = "{http://purl.org/dc/elements/1.1/}"


def parse_feed(body: bytes | str) -> list[FeedItem]:
    """Parse a feed document into items in document order.

    Raises FeedParseError naming the dialect-detection result when the body
    is not well-formed XML or not a recognized feed dialect.
    """
    try:
        root = ET.fromstring(body)
    except ET.ParseError as exc:
        raise FeedParseError(f"not well-formed XML: {exc}") from exc

    if root.tag == "rss":
        return _parse_rss2(root)
    if root.tag == NS_ATOM + "feed" or root.tag == "feed":
        return _parse_atom(root)
    if root.tag == NS_RDF + "RDF":
        return _parse_rdf(root)
    raise FeedParseError(f"unrecognized feed dialect: root element {root.tag!r}")


def _parse_rss2(root: ET.Element) -> list[FeedItem]:
    items = []
    for el in root.iter("item"):
        item = FeedItem(
            url=_text(el, "link"),
            guid=_text(el, "guid"),
            title=_text(el, "title"),
            pub_date=_parse_rfc822(_text(el, "pubDate")),
            description=_text(el, "description"),
        )
        if item.url or item.guid:
            items.append(item)
        else:
            log.warning("dropping rss item with no link or guid: %r", item.title)
    return items


def _parse_atom(root: ET.Element) -> list[FeedItem]:
    ns = NS_ATOM if root.tag.startswith("{") else ""
    items = []
    for el in root.findall(ns + "entry"):
        # published wins over updated when both are present
        pub = _parse_iso(_text(el, ns + "published")) or _parse_iso(_text(el, ns + "updated"))
        item = FeedItem(
            url=_atom_link(el, ns),
            guid=_text(el, ns + "id"),
            title=_text(el, ns + "title"),
            pub_date=pub,
            description=_text(el, ns + "summary"),
        )
        if item.url or item.guid:
            items.append(item)
        else:
            log.warning("dropping atom entry with no link or id: %r", item.title)
    return items


def _parse_rdf(root: ET.Element) -> list[FeedItem]:
    items = []
    for el in root.findall(NS_RSS1 + "item"):
        url = _text(el, NS_RSS1 + "link")
        item = FeedItem(
            url=url,
            guid=el.get(NS_RDF + "about", "") or url,
            title=_text(el, NS_RSS1 + "title"),
            pub_date=_parse_iso(_text(el, NS_DC + "date")),
            description=_text(el, NS_RSS1 + "description"),
        )
        if item.url or item.guid:
            items.append(item)
    return items


def _atom_link(entry: ET.Element, ns: str) -> str:
    fallback = ""
    for link in entry.findall(ns + "link"):
        rel = link.get("rel", "alternate")
        href = link.get("href", "")
        if rel == "alternate" and href:
            return href
        if href and not fallback:
            fallback = href
    return fallback


def _text(el: ET.Element, tag: str) -> str:
    child = el.find(tag)
    return (child.text or "").strip() if child is not None else ""


def _parse_rfc822(value: str) -> datetime | None:
    if not value:
        return None
    try:
        dt = email.utils.parsedate_to_datetime(value)
    except (TypeError, ValueError):
        return None
    return _to_naive_utc(dt)


def _parse_iso(value: str) -> datetime | None:
    if not value:
        return None
    try:
        dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        return None
    return _to_naive_utc(dt)


def _to_naive_utc(dt: datetime) -> datetime:
    if dt.tzinfo is not None:
        dt = dt.astimezone(timezone.utc).replace(tzinfo=None)
    return dt.replace(microsecond=0)
