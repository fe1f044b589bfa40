from datetime import datetime

import pytest

from newsflow.clock import SimClock
from newsflow.query.index import PostingsIndex
from newsflow.store import Store

START = datetime(2020, 6, 1, 0, 0, 0)


@pytest.fixture
def clock():
    return SimClock(START)


@pytest.fixture
def store(tmp_path, clock):
    s = Store(tmp_path / "test.db", clock)
    yield s
    s.close()


@pytest.fixture
def index():
    return PostingsIndex()


def article_html(title, text, links=(), published=None, extra_head=""):
    """A minimal article page: nav boilerplate, one substantive block, links."""
    meta = (
        f'<meta property="article:published_time" content="{published}">'
        if published
        else ""
    )
    anchors = "".join(f'<a href="{u}">more coverage</a>' for u in links)
    return f"""<html><head><title>{title}</title>{meta}{extra_head}</head>
<body>
<div class="nav"><a href="/">Home</a> <a href="/about">About</a></div>
<article><p>{text}</p></article>
<div class="links">{anchors}</div>
<div class="footer"><a href="/privacy">Privacy</a></div>
</body></html>"""


def rss_feed(items):
    """items: list of dicts with url/guid/title/pub_date keys."""
    chunks = []
    for item in items:
        fields = []
        if item.get("url"):
            fields.append(f"<link>{item['url']}</link>")
        if item.get("guid"):
            fields.append(f"<guid>{item['guid']}</guid>")
        if item.get("title"):
            fields.append(f"<title>{item['title']}</title>")
        if item.get("pub_date"):
            fields.append(f"<pubDate>{item['pub_date']}</pubDate>")
        if item.get("description"):
            fields.append(f"<description>{item['description']}</description>")
        chunks.append("<item>" + "".join(fields) + "</item>")
    return (
        '<?xml version="1.0"?><rss version="2.0"><channel>'
        + "".join(chunks)
        + "</channel></rss>"
    )
