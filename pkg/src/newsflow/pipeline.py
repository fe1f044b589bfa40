"""Story processing shared by the feed crawler and the topic spider:
extract, split, dedup per (media, day), guess language, store, index."""

from __future__ import annotations

import logging

from .models import ExtractionResult, Story
from .query.index import PostingsIndex
from .store import Store
from .textproc import detect_language, extract_text, split_sentences
from .textproc.langid import SUPPORTED_LANGUAGES

log = logging.getLogger(__name__)


def process_story(
    store: Store,
    index: PostingsIndex,
    stories_id: int,
    html: bytes | str,
    base_url: str = "",
) -> Story:
    """Run the text pipeline for a fetched story and index the result."""
    story = store.story(stories_id)
    extraction: ExtractionResult = extract_text(html, base_url or story.url)

    language = detect_language(extraction.text)
    split_lang = language if language in SUPPORTED_LANGUAGES else "en"
    sentences = split_sentences(extraction.text, split_lang)
    kept = store.filter_new_sentences(story.media_id, story.publish_date.date(), sentences)
    text = "\n".join(kept)

    store.save_story_text(stories_id, text, kept)
    store.set_story_language(stories_id, language)
    store.set_story_outlinks(stories_id, extraction.links)

    story = store.story(stories_id)
    index.index_story(story, text, media_tags=store.media_tags(story.media_id))
    return story


def reindex_store(store: Store, index: PostingsIndex) -> int:
    """Rebuild the in-memory index from persisted stories (service startup)."""
    count = 0
    for story in store.list_stories():
        text = store.story_text(story.stories_id)
        index.index_story(
            story,
            text.extracted_text if text else "",
            media_tags=store.media_tags(story.media_id),
        )
        count += 1
    for topic in store.list_topics():
        for span in store.timespans(topic.topics_id):
            for sid in span.story_ids:
                index.add_timespan(sid, span.timespans_id)
    return count
