"""Link-economy influence metrics and pluggable share counts."""

from __future__ import annotations

import json
import logging
from pathlib import Path

from ..store import Store, story_key

log = logging.getLogger(__name__)


def inlink_counts(store: Store, topics_id: int) -> tuple[dict[int, int], dict[int, int]]:
    """Media in-link counts.

    A story's count is the number of unique media sources linking to it; a
    medium's count is the number of unique media sources linking to any of
    its stories. Links from a story's own medium are excluded.
    """
    members = store.topic_story_ids(topics_id)
    media_of = {sid: store.story(sid).media_id for sid in members}

    story_sources: dict[int, set[int]] = {sid: set() for sid in members}
    media_sources: dict[int, set[int]] = {media_of[sid]: set() for sid in members}
    for link in store.topic_links(topics_id):
        src_media = media_of[link.source_stories_id]
        ref_media = media_of[link.ref_stories_id]
        if src_media == ref_media:
            continue
        story_sources[link.ref_stories_id].add(src_media)
        media_sources[ref_media].add(src_media)

    return (
        {sid: len(srcs) for sid, srcs in story_sources.items()},
        {mid: len(srcs) for mid, srcs in media_sources.items()},
    )


class FixtureShareProvider:
    """Share counts from a JSON file mapping URL -> count (keys normalized)."""

    def __init__(self, table: dict[str, int] | None = None, path: str | Path | None = None):
        raw = dict(table or {})
        if path is not None:
            raw.update(json.loads(Path(path).read_text(encoding="utf-8")))
        self._table = {story_key(url): count for url, count in raw.items()}

    def get(self, url: str) -> int | None:
        return self._table.get(story_key(url))


def share_counts(store: Store, topics_id: int, provider) -> tuple[dict[int, int | None], dict[int, int]]:
    """Per-story and per-media share counts via `provider.get(url)`.

    A URL the provider does not know contributes 0; a provider failure is
    recorded as None (absent, distinguishable from 0). Media counts are the
    sum of their stories' known counts.
    """
    members = store.topic_story_ids(topics_id)
    story_shares: dict[int, int | None] = {}
    media_shares: dict[int, int] = {}
    for sid in sorted(members):
        story = store.story(sid)
        media_shares.setdefault(story.media_id, 0)
        try:
            count = provider.get(story.url)
        except Exception as exc:
            log.warning("share provider failed for %s: %s", story.url, exc)
            story_shares[sid] = None
            continue
        value = count if count is not None else 0
        story_shares[sid] = value
        media_shares[story.media_id] += value
    return story_shares, media_shares
