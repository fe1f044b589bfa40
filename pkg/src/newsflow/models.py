"""Domain types: media, feeds, stories, tags, topics, fetches.

All timestamps are naive UTC datetimes; calendar fields are dates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime, timedelta

FEED_TYPES = ("syndicated", "virtual")

MIN_POLL_INTERVAL = timedelta(minutes=5)
MAX_POLL_INTERVAL = timedelta(days=7)


@dataclass
class MediaSource:
    media_id: int
    name: str
    url: str
    start_date: date
    tags: set[int] = field(default_factory=set)


@dataclass
class Feed:
    feeds_id: int
    media_id: int
    url: str
    active: bool = True
    type: str = "syndicated"
    poll_interval: timedelta = MIN_POLL_INTERVAL
    next_poll_at: datetime = datetime(1970, 1, 1)


@dataclass
class Story:
    stories_id: int
    media_id: int
    title: str
    publish_date: datetime
    collect_date: datetime
    url: str
    guid: str
    language: str = "und"
    tags: set[int] = field(default_factory=set)
    normalized_url: str = ""
    normalized_title: str = ""


@dataclass
class StoryText:
    stories_id: int
    extracted_text: str
    sentences: list[str]


@dataclass
class TagSet:
    tag_sets_id: int
    name: str
    label: str = ""
    description: str = ""


@dataclass
class Tag:
    tags_id: int
    tag_sets_id: int
    tag: str
    label: str = ""
    description: str = ""


@dataclass
class FeedItem:
    """One entry parsed out of a syndicated feed; at least one of url/guid set."""

    url: str = ""
    guid: str = ""
    title: str = ""
    pub_date: datetime | None = None
    description: str = ""


@dataclass
class FetchRecord:
    """Result of fetching a URL; status 0 is a synthetic network-failure code."""

    url: str
    status: int
    body: bytes
    fetched_at: datetime
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status == 200


@dataclass
class ExtractionResult:
    text: str
    title_guess: str
    links: list[str]


@dataclass
class Topic:
    topics_id: int
    name: str
    seed_query: str
    start_date: date
    end_date: date
    seed_media: set[int] = field(default_factory=set)
    seed_collections: set[int] = field(default_factory=set)
    seed_urls: list[str] = field(default_factory=list)
    max_rounds: int = 15


@dataclass
class TopicStory:
    topics_id: int
    stories_id: int
    discovered_round: int
    via: str  # index_seed | url_seed | spidered


@dataclass
class StoryLink:
    topics_id: int
    source_stories_id: int
    ref_stories_id: int


@dataclass
class Timespan:
    timespans_id: int
    topics_id: int
    period: str  # overall | weekly | monthly
    start: date
    end: date
    story_ids: set[int] = field(default_factory=set)


@dataclass
class PlatformPost:
    post_id: str
    author: str
    channel: str
    content: str
    urls: list[str]


@dataclass
class UrlShareStats:
    url: str
    post_count: int
    author_count: int
    channel_count: int
