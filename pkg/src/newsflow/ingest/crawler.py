"""Feed polling under the progressive backoff schedule."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from datetime import datetime

from ..clock import Clock, SystemClock
from ..errors import FeedParseError, RejectedItemError
from ..models import MAX_POLL_INTERVAL, MIN_POLL_INTERVAL, Feed, FetchRecord
from ..pipeline import process_story
from ..query.index import PostingsIndex
from ..store import Store
from .feedparse import parse_feed

log = logging.getLogger(__name__)


def schedule_next_poll(feed: Feed, found_new_story: bool, now: datetime) -> Feed:
    """New story resets the interval to five minutes; otherwise it doubles,
    capped at one week. next_poll_at moves to now + interval."""
    if found_new_story:
        interval = MIN_POLL_INTERVAL
    else:
        interval = min(feed.poll_interval * 2, MAX_POLL_INTERVAL)
    return replace(feed, poll_interval=interval, next_poll_at=now + interval)


class Crawler:
    def __init__(
        self,
        store: Store,
        index: PostingsIndex,
        fetcher,
        clock: Clock | None = None,
        workers: int = 1,
    ):
        self.store = store
        self.index = index
        self.fetcher = fetcher
        self.clock = clock or SystemClock()
        self.workers = workers

    def crawl_tick(self, now: datetime | None = None) -> list[tuple[int, int]]:
        """Poll every due feed once; returns (feeds_id, new_story_count) pairs.

        Fetch or parse failure counts as "no new story" for backoff and is
        logged, never raised.
        """
        now = now or self.clock.now()
        due = self.store.due_feeds(now)
        records = self._fetch_all([f.url for f in due])
        results = []
        for feed, record in zip(due, records):
            new_count = self._ingest_feed(feed, record)
            updated = schedule_next_poll(feed, new_count > 0, now)
            self.store.update_feed_schedule(feed.feeds_id, updated.poll_interval, updated.next_poll_at)
            results.append((feed.feeds_id, new_count))
        return results

    def run_until(self, until: datetime) -> int:
        """Crawl, sleeping between polls, until the clock passes `until`.

        With a SimClock this is a deterministic single-threaded simulation.
        Returns the number of ticks that polled at least one feed.
        """
        ticks = 0
        while True:
            now = self.clock.now()
            if now > until:
                break
            if self.store.due_feeds(now):
                self.crawl_tick(now)
                ticks += 1
                continue
            upcoming = [f.next_poll_at for f in self.store.list_feeds() if f.active]
            if not upcoming:
                break
            next_due = min(upcoming)
            if next_due > until:
                break
            self.clock.sleep((next_due - now).total_seconds())
        return ticks

    def _fetch_all(self, urls: list[str]) -> list[FetchRecord]:
        if self.workers > 1 and len(urls) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                return list(pool.map(self.fetcher.fetch, urls))
        return [self.fetcher.fetch(u) for u in urls]

    def _ingest_feed(self, feed: Feed, record: FetchRecord) -> int:
        if not record.ok:
            log.info("feed %s returned status %s", feed.url, record.status)
            return 0
        try:
            items = parse_feed(record.body)
        except FeedParseError as exc:
            log.warning("feed %s: %s", feed.url, exc)
            return 0
        new_count = 0
        for item in items:
            try:
                stories_id, created = self.store.match_or_insert_story(item, feed.media_id)
            except RejectedItemError:
                continue
            if created:
                new_count += 1
                self._process_new_story(stories_id)
        return new_count

    def _process_new_story(self, stories_id: int) -> None:
        story = self.store.story(stories_id)
        page = self.fetcher.fetch(story.url)
        html = page.body if page.ok else b""
        process_story(self.store, self.index, stories_id, html, base_url=story.url)
