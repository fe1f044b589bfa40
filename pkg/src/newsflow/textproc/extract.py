"""Substantive-text extraction: readability-style density scoring.

Each candidate block element is scored by the length of its text minus the
length of text sitting inside links, boosted for paragraph-like tags and
penalized when class/id hints mark it as chrome (nav, footer, comments).
The best-scoring subtree supplies the story text; links and the title guess
come from the whole document.
"""

from __future__ import annotations

from urllib.parse import urldefrag, urljoin

import re

from ..models import ExtractionResult
from .htmltree import Element, decode_html, parse_html

CANDIDATE_TAGS = {"p", "div", "article", "section", "main", "blockquote", "td", "pre"}
PARAGRAPH_LIKE = {"p", "article", "blockquote", "pre"}

HINT_PENALTY_RE = re.compile(
    r"nav|menu|footer|header|masthead|sidebar|comment|share|social|promo|banner"
    r"|advert|\bads?\b|breadcrumb|related|widget",
    re.IGNORECASE,
)

PARAGRAPH_BOOST = 1.5
PENALTY_FACTOR = 0.2


def extract_text(html: bytes | str, base_url: str = "") -> ExtractionResult:
    root = parse_html(decode_html(html))

    best: Element | None = None
    best_score = 0.0
    for el in root.iter():
        if el.tag not in CANDIDATE_TAGS:
            continue
        score = _score(el)
        if score > best_score:
            best, best_score = el, score
    text = best.text() if best is not None else ""

    links = _document_links(root, base_url)
    return ExtractionResult(text=text, title_guess=_title_guess(root), links=links)


def _score(el: Element) -> float:
    total = len(el.text())
    linked = sum(len(a.text()) for a in el.find_all("a"))
    score = float(total - linked)
    if el.tag in PARAGRAPH_LIKE:
        score *= PARAGRAPH_BOOST
    if HINT_PENALTY_RE.search(el.attr("class") + " " + el.attr("id")):
        score *= PENALTY_FACTOR
    return score


def _document_links(root: Element, base_url: str) -> list[str]:
    links: list[str] = []
    seen = set()
    for a in root.find_all("a"):
        href = a.attr("href").strip()
        if not href or href.startswith(("#", "javascript:", "mailto:", "tel:")):
            continue
        absolute = urldefrag(urljoin(base_url, href) if base_url else href).url
        if not absolute.startswith(("http://", "https://")):
            continue
        if absolute not in seen:
            seen.add(absolute)
            links.append(absolute)
    return links


def _title_guess(root: Element) -> str:
    for meta in root.find_all("meta"):
        if meta.attr("property").lower() == "og:title" and meta.attr("content").strip():
            return " ".join(meta.attr("content").split())
    for el in root.find_all("title"):
        t = el.text()
        if t:
            return " ".join(t.split())
    for el in root.find_all("h1"):
        t = el.text()
        if t:
            return " ".join(t.split())
    return ""
