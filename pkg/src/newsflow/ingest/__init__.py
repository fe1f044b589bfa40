"""Feed discovery, polling with progressive backoff, and URL fetching."""

from .crawler import Crawler, schedule_next_poll
from .discover import discover_feeds
from .feedparse import parse_feed
from .fetcher import CorpusBuilder, FixtureFetcher, LiveFetcher

__all__ = [
    "Crawler", "schedule_next_poll", "discover_feeds", "parse_feed",
    "CorpusBuilder", "FixtureFetcher", "LiveFetcher",
]
