"""Platform-post ingestion from CSV: seed URLs, per-URL share stats, and the
author co-share network between media sources."""

from __future__ import annotations

import csv
import logging
from pathlib import Path

from ..errors import CsvFormatError, MalformedUrlError
from ..models import PlatformPost, UrlShareStats
from ..store import Store, story_key

log = logging.getLogger(__name__)

POSTS_CSV_HEADER = ["post_id", "author", "channel", "content", "urls"]


def ingest_platform_posts(
    store: Store,
    topics_id: int,
    csv_path: str | Path,
    media_resolver,
) -> tuple[list[str], list[UrlShareStats], dict[tuple[int, int], int]]:
    """Ingest a posts CSV (`post_id,author,channel,content,urls`, urls
    space-separated) into a topic.

    All URLs are normalized and appended to the topic's seed URLs. Returns
    (added seed urls, per-URL distinct post/author/channel stats, co-share
    edges keyed by media pair). The co-share weight between media A and B
    counts distinct authors who shared at least one URL resolving to each.
    Malformed rows are skipped with a diagnostic; a missing or wrong header
    is a hard error.
    """
    store.topic(topics_id)  # raises on unknown topic
    posts = _read_posts(csv_path)

    url_posts: dict[str, set[str]] = {}
    url_authors: dict[str, set[str]] = {}
    url_channels: dict[str, set[str]] = {}
    author_media: dict[str, set[int]] = {}
    ordered_urls: list[str] = []

    for post in posts:
        for url in post.urls:
            try:
                key = story_key(url)
            except Exception:
                log.warning("skipping unusable url %r in post %s", url, post.post_id)
                continue
            if key not in url_posts:
                ordered_urls.append(key)
                url_posts[key] = set()
                url_authors[key] = set()
                url_channels[key] = set()
            url_posts[key].add(post.post_id)
            url_authors[key].add(post.author)
            url_channels[key].add(post.channel)
            try:
                media_id = media_resolver(url)
            except MalformedUrlError:
                log.warning("no media resolvable for %r", url)
                continue
            author_media.setdefault(post.author, set()).add(media_id)

    before = set(store.topic(topics_id).seed_urls)
    store.append_seed_urls(topics_id, ordered_urls)
    added = [u for u in store.topic(topics_id).seed_urls if u not in before]

    stats = [
        UrlShareStats(
            url=key,
            post_count=len(url_posts[key]),
            author_count=len(url_authors[key]),
            channel_count=len(url_channels[key]),
        )
        for key in sorted(url_posts)
    ]

    edges: dict[tuple[int, int], int] = {}
    for media_ids in author_media.values():
        ordered = sorted(media_ids)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1 :]:
                edges[(a, b)] = edges.get((a, b), 0) + 1

    store.save_url_shares(topics_id, stats)
    store.save_coshares(topics_id, edges)
    return added, stats, edges


def _read_posts(csv_path: str | Path) -> list[PlatformPost]:
    posts = []
    with open(csv_path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != POSTS_CSV_HEADER:
            raise CsvFormatError(
                f"posts csv must start with header {','.join(POSTS_CSV_HEADER)}"
            )
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(POSTS_CSV_HEADER) or not row[0]:
                log.warning("skipping malformed posts row %d: %r", lineno, row)
                continue
            posts.append(
                PlatformPost(
                    post_id=row[0], author=row[1], channel=row[2],
                    content=row[3], urls=row[4].split(),
                )
            )
    return posts
