"""Per-(media source, calendar day) sentence deduplication."""

from __future__ import annotations

from datetime import date

from ..store import Store


def dedup_sentences(store: Store, media_id: int, day: date, sentences: list[str]) -> list[str]:
    """Drop sentences already stored for (media_id, day); first occurrence wins.

    Identity is exact string equality after whitespace collapse. Kept
    sentences are recorded, so re-processing the same story adds nothing.
    """
    return store.filter_new_sentences(media_id, day, sentences)
