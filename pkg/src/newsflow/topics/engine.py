"""Topic spidering: seed from the index, then follow hyperlinks for up to
max_rounds rounds, admitting stories that match the seed query."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import date

from ..clock import Clock, SystemClock
from ..errors import MalformedUrlError, QueryParseError, TopicError
from ..models import FeedItem, Story, Topic, TopicStory
from ..pipeline import process_story
from ..query import parse_query, story_matches
from ..query.ast import QueryNode
from ..query.index import PostingsIndex
from ..store import Store, story_key
from ..textproc.extract import extract_text
from ..urlnorm import registrable_domain, url_host
from .dates import guess_date
from .timespans import build_timespans

log = logging.getLogger(__name__)

DEFAULT_FETCH_BUDGET = 10_000


@dataclass
class _QueueEntry:
    url: str
    via: str  # url_seed | spidered
    sources: set[int] = field(default_factory=set)


@dataclass
class _RunState:
    attempted: set[str] = field(default_factory=set)
    members: set[int] = field(default_factory=set)
    member_in_range: dict[int, bool] = field(default_factory=dict)
    member_keys: dict[str, int] = field(default_factory=dict)
    outlink_index: dict[str, set[int]] = field(default_factory=dict)
    tested_nonmember: set[int] = field(default_factory=set)
    fetches: int = 0


class TopicEngine:
    def __init__(
        self,
        store: Store,
        index: PostingsIndex,
        fetcher,
        clock: Clock | None = None,
        fetch_budget: int = DEFAULT_FETCH_BUDGET,
        workers: int = 1,
    ):
        self.store = store
        self.index = index
        self.fetcher = fetcher
        self.clock = clock or SystemClock()
        self.fetch_budget = fetch_budget
        self.workers = workers

    # -- creation -----------------------------------------------------------

    def create_topic(
        self,
        name: str,
        seed_query: str,
        start_date: date,
        end_date: date,
        seed_media: set[int] | None = None,
        seed_collections: set[int] | None = None,
        seed_urls: list[str] | None = None,
        max_rounds: int = 15,
    ) -> Topic:
        try:
            parse_query(seed_query)
        except QueryParseError as exc:
            raise TopicError(f"seed query rejected: {exc}") from exc
        return self.store.add_topic(
            name, seed_query, start_date, end_date,
            seed_media, seed_collections, seed_urls, max_rounds,
        )

    # -- seeding ------------------------------------------------------------

    def seed_topic(self, topic: Topic) -> tuple[set[int], list[str]]:
        """Round-0 candidate story ids plus the initial URL queue."""
        ast = parse_query(topic.seed_query)
        media_filter = self._media_filter(topic)
        seeds = set()
        for sid in self.index.search(ast):
            story = self.store.story(sid)
            if media_filter is not None and story.media_id not in media_filter:
                continue
            if not (topic.start_date <= story.publish_date.date() <= topic.end_date):
                continue
            seeds.add(sid)
        queue = list(topic.seed_urls)
        for sid in sorted(seeds):
            queue.extend(self.store.story_outlinks(sid))
        return seeds, queue

    def _media_filter(self, topic: Topic) -> set[int] | None:
        if not topic.seed_media and not topic.seed_collections:
            return None
        media = set(topic.seed_media)
        for tags_id in topic.seed_collections:
            media |= self.store.media_with_tag(tags_id)
        return media

    # -- spidering ----------------------------------------------------------

    def spider(self, topics_id: int) -> list[TopicStory]:
        """Run the full spider: seed, then up to max_rounds link-follow rounds,
        then timespans. Re-running resets the previous run's state."""
        topic = self.store.topic(topics_id)
        ast = parse_query(topic.seed_query)
        self.store.reset_topic_run(topics_id)

        state = _RunState()
        seeds, seed_queue = self.seed_topic(topic)
        for sid in sorted(seeds):
            self._add_member(state, topic, sid, round_k=0, via="index_seed")

        queue: dict[str, _QueueEntry] = {}
        for url in topic.seed_urls:
            self._enqueue(queue, state, url, "url_seed", None)
        for sid in sorted(seeds):
            for url in self.store.story_outlinks(sid):
                self._enqueue(queue, state, url, "spidered", sid)

        for round_k in range(1, topic.max_rounds + 1):
            if not queue:
                break
            queue = self._spider_round(topic, ast, state, round_k, queue)

        build_timespans(self.store, self.index, topics_id)
        return self.store.topic_stories(topics_id)

    def _spider_round(
        self,
        topic: Topic,
        ast: QueryNode,
        state: _RunState,
        round_k: int,
        queue: dict[str, _QueueEntry],
    ) -> dict[str, _QueueEntry]:
        prefetched = self._prefetch(state, queue)
        next_queue: dict[str, _QueueEntry] = {}
        for key in sorted(queue):
            entry = queue[key]
            if key in state.attempted:
                continue
            state.attempted.add(key)
            stories_id = self._resolve_url(topic, state, key, entry, prefetched.get(key))
            if stories_id is None:
                continue
            if stories_id in state.members or stories_id in state.tested_nonmember:
                continue
            if self._admit(topic, ast, state, stories_id, key, entry):
                self._add_member(state, topic, stories_id, round_k, entry.via)
                for url in self.store.story_outlinks(stories_id):
                    self._enqueue(next_queue, state, url, "spidered", stories_id)
            else:
                state.tested_nonmember.add(stories_id)
        return next_queue

    def _prefetch(self, state: _RunState, queue: dict[str, _QueueEntry]) -> dict:
        """Fetch the round's unresolved URLs on a worker pool. A story created
        mid-round never makes a later URL resolvable by key, so this is
        exactly the set the sequential path would fetch."""
        if self.workers <= 1:
            return {}
        to_fetch = []
        budget_left = self.fetch_budget - state.fetches
        for key in sorted(queue):
            if len(to_fetch) >= budget_left:
                break
            if key in state.attempted:
                continue
            if self.store.story_by_key(queue[key].url) is None:
                to_fetch.append(key)
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            records = pool.map(lambda k: self.fetcher.fetch(queue[k].url), to_fetch)
        return dict(zip(to_fetch, records))

    def _resolve_url(self, topic: Topic, state: _RunState, key: str, entry: _QueueEntry,
                     prefetched=None) -> int | None:
        existing = self.store.story_by_key(entry.url)
        if existing is not None:
            self.store.record_topic_attempt(topic.topics_id, key, 200, "matched existing story")
            return existing
        if state.fetches >= self.fetch_budget:
            self.store.record_topic_attempt(topic.topics_id, key, 0, "fetch budget exhausted")
            return None
        state.fetches += 1
        record = prefetched if prefetched is not None else self.fetcher.fetch(entry.url)
        self.store.record_topic_attempt(topic.topics_id, key, record.status, record.note)
        if not record.ok:
            return None

        media_id = self.media_for_hostname(entry.url)
        extraction = extract_text(record.body, entry.url)
        fallback = self._link_date_fallback(entry)
        published = guess_date(record.body, entry.url, fallback, now=self.clock.now())
        title = extraction.title_guess or entry.url
        stories_id, created = self.store.match_or_insert_story(
            FeedItem(url=entry.url, guid=entry.url, title=title, pub_date=published),
            media_id,
        )
        if created:
            process_story(self.store, self.index, stories_id, record.body, base_url=entry.url)
        return stories_id

    def _link_date_fallback(self, entry: _QueueEntry):
        for sid in sorted(entry.sources):
            return self.store.story(sid).publish_date
        return self.clock.now()

    def _admit(
        self,
        topic: Topic,
        ast: QueryNode,
        state: _RunState,
        stories_id: int,
        key: str,
        entry: _QueueEntry,
    ) -> bool:
        """Membership rule: text matches the seed query, and the story is in
        the date range or linked from an in-range member."""
        story = self.store.story(stories_id)
        text = self.store.story_text(stories_id)
        body = text.extracted_text if text else ""
        if not story_matches(ast, story, body, media_tags=self.store.media_tags(story.media_id)):
            return False
        if topic.start_date <= story.publish_date.date() <= topic.end_date:
            return True
        linkers = set(entry.sources) | state.outlink_index.get(key, set())
        for source in linkers:
            if source in state.members and state.member_in_range.get(source):
                return True
        return False

    def _add_member(self, state: _RunState, topic: Topic, stories_id: int, round_k: int, via: str) -> None:
        story = self.store.story(stories_id)
        self.store.add_topic_story(topic.topics_id, stories_id, round_k, via)
        state.members.add(stories_id)
        state.member_in_range[stories_id] = (
            topic.start_date <= story.publish_date.date() <= topic.end_date
        )
        own_keys = {story.normalized_url}
        for raw in (story.url, story.guid):
            if raw:
                own_keys.add(story_key(raw))
        for key in own_keys:
            state.member_keys.setdefault(key, stories_id)

        # record link edges in both directions against current members
        for url in self.store.story_outlinks(stories_id):
            key = story_key(url)
            state.outlink_index.setdefault(key, set()).add(stories_id)
            target = state.member_keys.get(key)
            if target is not None:
                self.store.add_topic_link(topic.topics_id, stories_id, target)
        for key in own_keys:
            for source in state.outlink_index.get(key, ()):
                self.store.add_topic_link(topic.topics_id, source, stories_id)

    def _enqueue(
        self,
        queue: dict[str, _QueueEntry],
        state: _RunState,
        url: str,
        via: str,
        source: int | None,
    ) -> None:
        key = story_key(url)
        if key in state.attempted:
            return
        entry = queue.get(key)
        if entry is None:
            entry = queue[key] = _QueueEntry(url=url, via=via)
        if source is not None:
            entry.sources.add(source)

    # -- subtopics ------------------------------------------------------------

    def subtopic(self, topics_id: int, filter_query: str) -> set[int]:
        """Topic members whose text matches `filter_query`."""
        ast = parse_query(filter_query)
        members = self.store.topic_story_ids(topics_id)
        return set(self.index.search(ast, within=members))

    # -- media resolution -------------------------------------------------------

    def media_for_hostname(self, url: str) -> int:
        """Media source owning the URL's registrable domain, creating a
        placeholder source named by the domain when none exists."""
        host = url_host(url)
        if not host:
            raise MalformedUrlError(url, "host")
        domain = registrable_domain(host)
        existing = self.store.media_by_domain(domain)
        if existing is not None:
            return existing.media_id
        created = self.store.add_media(name=domain, url=f"http://{domain}/")
        log.info("created placeholder media %s for %s", created.media_id, domain)
        return created.media_id
