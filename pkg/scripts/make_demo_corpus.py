#!/usr/bin/env python3
"""Build the small committed demo corpus under fixtures/demo."""

import shutil
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from newsflow.ingest.fetcher import CorpusBuilder  # noqa: E402

OUT = ROOT / "fixtures" / "demo"


def page(title, text, links=(), published=None):
    meta = (
        f'<meta property="article:published_time" content="{published}">' if published else ""
    )
    anchors = "".join(f'<li><a href="{u}">{u}</a></li>' for u in links)
    return f"""<html><head><title>{title}</title>{meta}</head>
<body>
<div class="nav"><a href="/">Home</a></div>
<article>
<h1>{title}</h1>
<p>{text}</p>
</article>
<ul class="related">{anchors}</ul>
</body></html>"""


def rss(items):
    rows = "".join(
        f"<item><link>{u}</link><guid>{u}</guid><title>{t}</title>"
        f"<pubDate>{d}</pubDate></item>"
        for u, t, d in items
    )
    return f'<?xml version="1.0"?><rss version="2.0"><channel>{rows}</channel></rss>'


def main() -> None:
    if OUT.exists():
        shutil.rmtree(OUT)
    cb = CorpusBuilder(OUT)

    cb.add("http://gazette.example/",
           '<html><head><link rel="alternate" type="application/rss+xml" href="/feed.xml">'
           "</head><body><h1>The Daily Gazette</h1></body></html>")
    cb.add("http://gazette.example/feed.xml", rss([
        ("http://gazette.example/mail-voting-surge", "Mail voting surges statewide",
         "Tue, 02 Jun 2020 08:00:00 GMT"),
        ("http://gazette.example/ballot-fraud-claims", "Officials reject ballot fraud claims",
         "Wed, 03 Jun 2020 09:00:00 GMT"),
        ("http://gazette.example/county-fair", "County fair returns this summer",
         "Thu, 04 Jun 2020 10:00:00 GMT"),
    ]))
    cb.add("http://gazette.example/mail-voting-surge", page(
        "Mail voting surges statewide",
        "Requests for mail ballots tripled this spring as voters favored voting from home. "
        "Election offices hired extra staff to process the absentee surge.",
        ["http://gazette.example/ballot-fraud-claims", "http://watchblog.example/mail-vote-skeptic"],
        "2020-06-02T08:00:00Z"))
    cb.add("http://gazette.example/ballot-fraud-claims", page(
        "Officials reject ballot fraud claims",
        "State officials said claims of widespread mail ballot fraud were unsupported. "
        "An audit of absentee envelopes found the error rate far below one percent.",
        ["http://gazette.example/mail-voting-surge"],
        "2020-06-03T09:00:00Z"))
    cb.add("http://gazette.example/county-fair", page(
        "County fair returns this summer",
        "The county fair returns with livestock shows and a pie contest. Organizers expect "
        "record attendance after last year's cancellation.",
        [],
        "2020-06-04T10:00:00Z"))

    cb.add("http://watchblog.example/mail-vote-skeptic", page(
        "A skeptic's look at mail votes",
        "The blog revisits the talk of rigged mail elections and finds the fraud evidence thin. "
        "Ballot harvesting rules differ by state, which fuels the confusion.",
        ["http://gazette.example/ballot-fraud-claims"],
        "2020-06-05T12:00:00Z"))

    print(f"demo corpus written to {OUT}")


if __name__ == "__main__":
    main()
