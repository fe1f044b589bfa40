"""Feed discovery: crawl two levels from a home page and validate candidates."""

from __future__ import annotations

import logging
import re

from ..errors import FeedParseError
from ..store import story_key
from ..textproc.htmltree import decode_html, parse_html
from ..urlnorm import registrable_domain, url_host
from .feedparse import parse_feed

log = logging.getLogger(__name__)

FEED_HINT_RE = re.compile(r"rss|xml|atom|feed|rdf", re.IGNORECASE)
MAX_SECOND_LEVEL_PAGES = 50


def discover_feeds(home_url: str, fetcher) -> list[str]:
    """Feed URLs reachable within two page levels of `home_url`, validated by
    parsing (kept only when the body is a feed with at least one item)."""
    record = fetcher.fetch(home_url)
    if not record.ok:
        log.warning("home page unfetchable (%s): %s", record.status, home_url)
        return []

    home_domain = registrable_domain(url_host(home_url))
    candidates: list[str] = []
    seen_candidates: set[str] = set()
    second_level: list[str] = []
    seen_pages = {story_key(home_url)}

    def scan(html: bytes, base_url: str, collect_pages: bool) -> None:
        for href, hint_text in _page_links(html, base_url):
            if FEED_HINT_RE.search(href) or FEED_HINT_RE.search(hint_text):
                if href not in seen_candidates:
                    seen_candidates.add(href)
                    candidates.append(href)
            elif collect_pages and registrable_domain(url_host(href)) == home_domain:
                key = story_key(href)
                if key not in seen_pages:
                    seen_pages.add(key)
                    second_level.append(href)

    scan(record.body, home_url, collect_pages=True)
    for page_url in sorted(second_level)[:MAX_SECOND_LEVEL_PAGES]:
        page = fetcher.fetch(page_url)
        if page.ok:
            scan(page.body, page_url, collect_pages=False)

    valid = set()
    for url in sorted(seen_candidates):
        body = fetcher.fetch(url)
        if not body.ok:
            continue
        try:
            items = parse_feed(body.body)
        except FeedParseError:
            continue
        if items:
            valid.add(url)
    return sorted(valid)


def _page_links(html: bytes, base_url: str) -> list[tuple[str, str]]:
    """(absolute url, hint text) pairs from <a> and <link> elements."""
    from urllib.parse import urljoin

    root = parse_html(decode_html(html))
    out = []
    for el in root.iter():
        if el.tag == "a" and el.attr("href"):
            out.append((urljoin(base_url, el.attr("href")), el.text()))
        elif el.tag == "link" and el.attr("href"):
            out.append((urljoin(base_url, el.attr("href")), el.attr("type")))
    return out
