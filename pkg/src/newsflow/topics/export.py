"""Topic dataset export: CSV files with fixed headers, RFC-4180 quoting."""

from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path

from ..store import Store
from ..timeutil import fmt_dt
from .metrics import inlink_counts, share_counts

STORIES_HEADER = [
    "stories_id", "media_id", "title", "publish_date", "url", "language",
    "media_inlink_count", "share_count",
]
MEDIA_HEADER = ["media_id", "name", "url", "media_inlink_count", "share_count"]
STORY_LINKS_HEADER = ["source_stories_id", "ref_stories_id"]
MEDIUM_LINKS_HEADER = ["source_media_id", "ref_media_id", "link_count"]
TIMESPANS_HEADER = ["timespans_id", "period", "start_date", "end_date", "story_count"]
URL_SHARES_HEADER = ["url", "post_count", "author_count", "channel_count"]
COSHARE_HEADER = ["media_a_id", "media_b_id", "author_count"]


def export_topic(store: Store, topics_id: int, out_dir: str | Path, share_provider=None) -> list[Path]:
    """Write the topic dataset (stories, media, story_links, medium_links,
    timespans) to `out_dir`; returns the files written.

    When platform posts were ingested, url_share_stats and coshare_links
    files are included too. Without a share provider the share_count columns
    are left blank (absent, distinguishable from a provider-reported 0).
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    members = sorted(store.topic_story_ids(topics_id))
    stories = {sid: store.story(sid) for sid in members}
    story_inlinks, media_inlinks = inlink_counts(store, topics_id)
    if share_provider is not None:
        story_shares, media_shares = share_counts(store, topics_id, share_provider)
    else:
        story_shares, media_shares = {}, {}

    written = []

    def blank_if_absent(value):
        return "" if value is None else value

    path = out / "stories.csv"
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(STORIES_HEADER)
        for sid in members:
            s = stories[sid]
            w.writerow([
                s.stories_id, s.media_id, s.title, fmt_dt(s.publish_date), s.url,
                s.language, story_inlinks.get(sid, 0),
                blank_if_absent(story_shares.get(sid)),
            ])
    written.append(path)

    media_ids = sorted({s.media_id for s in stories.values()})
    path = out / "media.csv"
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(MEDIA_HEADER)
        for mid in media_ids:
            m = store.media(mid)
            share = media_shares.get(mid) if share_provider is not None else None
            w.writerow([m.media_id, m.name, m.url, media_inlinks.get(mid, 0), blank_if_absent(share)])
    written.append(path)

    links = store.topic_links(topics_id)
    path = out / "story_links.csv"
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(STORY_LINKS_HEADER)
        for link in links:
            w.writerow([link.source_stories_id, link.ref_stories_id])
    written.append(path)

    medium_links = Counter()
    for link in links:
        src_media = stories[link.source_stories_id].media_id
        ref_media = stories[link.ref_stories_id].media_id
        if src_media != ref_media:
            medium_links[(src_media, ref_media)] += 1
    path = out / "medium_links.csv"
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(MEDIUM_LINKS_HEADER)
        for (src, ref), count in sorted(medium_links.items()):
            w.writerow([src, ref, count])
    written.append(path)

    path = out / "timespans.csv"
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(TIMESPANS_HEADER)
        for span in store.timespans(topics_id):
            w.writerow([
                span.timespans_id, span.period, span.start.isoformat(),
                span.end.isoformat(), len(span.story_ids),
            ])
    written.append(path)

    shares = store.url_shares(topics_id)
    coshares = store.coshares(topics_id)
    if shares:
        path = out / "url_share_stats.csv"
        with open(path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f)
            w.writerow(URL_SHARES_HEADER)
            for url, posts, authors, channels in shares:
                w.writerow([url, posts, authors, channels])
        written.append(path)
    if coshares:
        path = out / "coshare_links.csv"
        with open(path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f)
            w.writerow(COSHARE_HEADER)
            for (a, b), weight in sorted(coshares.items()):
                w.writerow([a, b, weight])
        written.append(path)

    return written
