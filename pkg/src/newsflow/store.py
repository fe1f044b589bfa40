"""Persistent data model: media, feeds, stories, tags, topics.

Backed by a single sqlite file in WAL mode. All mutations go through one
writer connection guarded by an RLock (single-writer, multi-reader); read
methods are safe from any thread.
"""

from __future__ import annotations

import csv
import hashlib
import json
import sqlite3
import threading
from datetime import date, datetime, timedelta
from pathlib import Path

from .clock import Clock, SystemClock
from .errors import (
    MalformedUrlError,
    NewsflowError,
    RejectedItemError,
    UnknownTargetError,
)
from .models import (
    FEED_TYPES,
    MAX_POLL_INTERVAL,
    MIN_POLL_INTERVAL,
    Feed,
    FeedItem,
    MediaSource,
    Story,
    StoryLink,
    StoryText,
    Tag,
    TagSet,
    Timespan,
    Topic,
    TopicStory,
)
from .timeutil import fmt_dt, parse_date, parse_dt, sunday_of
from .urlnorm import normalize_title, normalize_url, registrable_domain, url_host

TITLE_MATCH_WINDOW = timedelta(days=7)

MEDIA_CSV_HEADER = ["media_id", "name", "url", "start_date"]
FEEDS_CSV_HEADER = ["feeds_id", "media_id", "url", "active", "type"]

SCHEMA = """
CREATE TABLE IF NOT EXISTS media (
    media_id    INTEGER PRIMARY KEY,
    name        TEXT NOT NULL UNIQUE,
    url         TEXT NOT NULL,
    start_date  TEXT NOT NULL
);

CREATE TABLE IF NOT EXISTS feeds (
    feeds_id        INTEGER PRIMARY KEY,
    media_id        INTEGER NOT NULL REFERENCES media(media_id),
    url             TEXT NOT NULL,
    active          INTEGER NOT NULL DEFAULT 1,
    type            TEXT NOT NULL DEFAULT 'syndicated',
    poll_interval_s INTEGER NOT NULL,
    next_poll_at    TEXT NOT NULL
);

CREATE TABLE IF NOT EXISTS stories (
    stories_id       INTEGER PRIMARY KEY,
    media_id         INTEGER NOT NULL REFERENCES media(media_id),
    title            TEXT NOT NULL,
    publish_date     TEXT NOT NULL,
    collect_date     TEXT NOT NULL,
    url              TEXT NOT NULL,
    guid             TEXT NOT NULL,
    language         TEXT NOT NULL DEFAULT 'und',
    normalized_url   TEXT NOT NULL UNIQUE,
    normalized_title TEXT NOT NULL
);
CREATE INDEX IF NOT EXISTS idx_stories_title ON stories(media_id, normalized_title);

-- URL- and GUID-derived lookup keys for story matching; first writer wins.
CREATE TABLE IF NOT EXISTS story_keys (
    key        TEXT PRIMARY KEY,
    stories_id INTEGER NOT NULL REFERENCES stories(stories_id)
);

CREATE TABLE IF NOT EXISTS story_texts (
    stories_id     INTEGER PRIMARY KEY REFERENCES stories(stories_id),
    extracted_text TEXT NOT NULL,
    sentences      TEXT NOT NULL
);

CREATE TABLE IF NOT EXISTS story_outlinks (
    stories_id INTEGER NOT NULL REFERENCES stories(stories_id),
    seq        INTEGER NOT NULL,
    url        TEXT NOT NULL,
    PRIMARY KEY (stories_id, seq)
);

-- Sentence hashes already seen for a (media source, calendar day) bucket.
CREATE TABLE IF NOT EXISTS sentence_seen (
    media_id INTEGER NOT NULL,
    day      TEXT NOT NULL,
    hash     TEXT NOT NULL,
    PRIMARY KEY (media_id, day, hash)
);

CREATE TABLE IF NOT EXISTS tag_sets (
    tag_sets_id INTEGER PRIMARY KEY,
    name        TEXT NOT NULL UNIQUE,
    label       TEXT NOT NULL DEFAULT '',
    description TEXT NOT NULL DEFAULT ''
);

CREATE TABLE IF NOT EXISTS tags (
    tags_id     INTEGER PRIMARY KEY,
    tag_sets_id INTEGER NOT NULL REFERENCES tag_sets(tag_sets_id),
    tag         TEXT NOT NULL,
    label       TEXT NOT NULL DEFAULT '',
    description TEXT NOT NULL DEFAULT '',
    UNIQUE (tag_sets_id, tag)
);

CREATE TABLE IF NOT EXISTS story_tags (
    stories_id INTEGER NOT NULL REFERENCES stories(stories_id),
    tags_id    INTEGER NOT NULL REFERENCES tags(tags_id),
    PRIMARY KEY (stories_id, tags_id)
);

CREATE TABLE IF NOT EXISTS media_tags (
    media_id INTEGER NOT NULL REFERENCES media(media_id),
    tags_id  INTEGER NOT NULL REFERENCES tags(tags_id),
    PRIMARY KEY (media_id, tags_id)
);

CREATE TABLE IF NOT EXISTS topics (
    topics_id        INTEGER PRIMARY KEY,
    name             TEXT NOT NULL,
    seed_query       TEXT NOT NULL,
    start_date       TEXT NOT NULL,
    end_date         TEXT NOT NULL,
    seed_media       TEXT NOT NULL DEFAULT '[]',
    seed_collections TEXT NOT NULL DEFAULT '[]',
    seed_urls        TEXT NOT NULL DEFAULT '[]',
    max_rounds       INTEGER NOT NULL DEFAULT 15
);

CREATE TABLE IF NOT EXISTS topic_stories (
    topics_id        INTEGER NOT NULL REFERENCES topics(topics_id),
    stories_id       INTEGER NOT NULL REFERENCES stories(stories_id),
    discovered_round INTEGER NOT NULL,
    via              TEXT NOT NULL,
    PRIMARY KEY (topics_id, stories_id)
);

CREATE TABLE IF NOT EXISTS topic_links (
    topics_id         INTEGER NOT NULL REFERENCES topics(topics_id),
    source_stories_id INTEGER NOT NULL,
    ref_stories_id    INTEGER NOT NULL,
    PRIMARY KEY (topics_id, source_stories_id, ref_stories_id),
    CHECK (source_stories_id <> ref_stories_id)
);

-- Every URL a topic run has attempted, so nothing is fetched twice per topic.
CREATE TABLE IF NOT EXISTS topic_attempts (
    topics_id INTEGER NOT NULL,
    url       TEXT NOT NULL,
    status    INTEGER NOT NULL,
    note      TEXT NOT NULL DEFAULT '',
    PRIMARY KEY (topics_id, url)
);

CREATE TABLE IF NOT EXISTS timespans (
    timespans_id INTEGER PRIMARY KEY,
    topics_id    INTEGER NOT NULL REFERENCES topics(topics_id),
    period       TEXT NOT NULL,
    start_date   TEXT NOT NULL,
    end_date     TEXT NOT NULL
);

CREATE TABLE IF NOT EXISTS timespan_stories (
    timespans_id INTEGER NOT NULL REFERENCES timespans(timespans_id),
    stories_id   INTEGER NOT NULL,
    PRIMARY KEY (timespans_id, stories_id)
);

CREATE TABLE IF NOT EXISTS topic_url_shares (
    topics_id     INTEGER NOT NULL,
    url           TEXT NOT NULL,
    post_count    INTEGER NOT NULL,
    author_count  INTEGER NOT NULL,
    channel_count INTEGER NOT NULL,
    PRIMARY KEY (topics_id, url)
);

CREATE TABLE IF NOT EXISTS topic_coshares (
    topics_id INTEGER NOT NULL,
    media_a   INTEGER NOT NULL,
    media_b   INTEGER NOT NULL,
    weight    INTEGER NOT NULL,
    PRIMARY KEY (topics_id, media_a, media_b)
);
"""


def story_key(raw: str) -> str:
    """Lookup key for a URL or GUID: normalized when possible, else the raw string."""
    try:
        return normalize_url(raw)
    except MalformedUrlError:
        return raw


def sentence_hash(sentence: str) -> str:
    collapsed = " ".join(sentence.split())
    return hashlib.sha1(collapsed.encode("utf-8")).hexdigest()


class Store:
    def __init__(self, path: str | Path = ":memory:", clock: Clock | None = None):
        self.path = str(path)
        self.clock = clock or SystemClock()
        self._lock = threading.RLock()
        if self.path != ":memory:":
            Path(self.path).parent.mkdir(parents=True, exist_ok=True)
        self._db = sqlite3.connect(self.path, check_same_thread=False)
        self._db.execute("PRAGMA journal_mode=WAL")
        self._db.execute("PRAGMA foreign_keys=ON")
        self._db.executescript(SCHEMA)
        self._db.commit()

    def close(self) -> None:
        with self._lock:
            self._db.close()

    # -- media ------------------------------------------------------------

    def add_media(self, name: str, url: str, start_date: date | None = None) -> MediaSource:
        if not name:
            raise NewsflowError("media name must be non-empty")
        if not url:
            raise NewsflowError("media url must be non-empty")
        with self._lock:
            existing = self._db.execute(
                "SELECT media_id FROM media WHERE name = ?", (name,)
            ).fetchone()
            if existing:
                raise NewsflowError(f"media name {name!r} already exists")
            start = start_date or self.clock.now().date()
            cur = self._db.execute(
                "INSERT INTO media (name, url, start_date) VALUES (?, ?, ?)",
                (name, url, start.isoformat()),
            )
            self._db.commit()
            return MediaSource(cur.lastrowid, name, url, start)

    def media(self, media_id: int) -> MediaSource:
        row = self._db.execute(
            "SELECT media_id, name, url, start_date FROM media WHERE media_id = ?",
            (media_id,),
        ).fetchone()
        if not row:
            raise UnknownTargetError(f"unknown media id {media_id}")
        return MediaSource(row[0], row[1], row[2], parse_date(row[3]), self.media_tags(row[0]))

    def has_media(self, media_id: int) -> bool:
        return (
            self._db.execute("SELECT 1 FROM media WHERE media_id = ?", (media_id,)).fetchone()
            is not None
        )

    def list_media(self) -> list[MediaSource]:
        rows = self._db.execute(
            "SELECT media_id, name, url, start_date FROM media ORDER BY media_id"
        ).fetchall()
        return [MediaSource(r[0], r[1], r[2], parse_date(r[3]), self.media_tags(r[0])) for r in rows]

    def media_by_domain(self, domain: str) -> MediaSource | None:
        """First media source (lowest id) whose home URL shares `domain`."""
        for m in self.list_media():
            host = url_host(m.url)
            if host and registrable_domain(host) == domain:
                return m
        return None

    # -- feeds ------------------------------------------------------------

    def add_feed(
        self,
        media_id: int,
        url: str,
        type: str = "syndicated",
        active: bool = True,
        poll_interval: timedelta = MIN_POLL_INTERVAL,
        next_poll_at: datetime | None = None,
    ) -> Feed:
        if not self.has_media(media_id):
            raise UnknownTargetError(f"unknown media id {media_id}")
        if type not in FEED_TYPES:
            raise NewsflowError(f"feed type must be one of {FEED_TYPES}, not {type!r}")
        if not MIN_POLL_INTERVAL <= poll_interval <= MAX_POLL_INTERVAL:
            raise NewsflowError("poll_interval out of range")
        with self._lock:
            next_poll = next_poll_at or self.clock.now()
            cur = self._db.execute(
                "INSERT INTO feeds (media_id, url, active, type, poll_interval_s, next_poll_at)"
                " VALUES (?, ?, ?, ?, ?, ?)",
                (media_id, url, int(active), type, int(poll_interval.total_seconds()), fmt_dt(next_poll)),
            )
            self._db.commit()
            return Feed(cur.lastrowid, media_id, url, active, type, poll_interval, next_poll)

    def feed(self, feeds_id: int) -> Feed:
        row = self._db.execute(
            "SELECT feeds_id, media_id, url, active, type, poll_interval_s, next_poll_at"
            " FROM feeds WHERE feeds_id = ?",
            (feeds_id,),
        ).fetchone()
        if not row:
            raise UnknownTargetError(f"unknown feed id {feeds_id}")
        return self._feed_row(row)

    def list_feeds(self, media_id: int | None = None) -> list[Feed]:
        q = "SELECT feeds_id, media_id, url, active, type, poll_interval_s, next_poll_at FROM feeds"
        args: tuple = ()
        if media_id is not None:
            q += " WHERE media_id = ?"
            args = (media_id,)
        return [self._feed_row(r) for r in self._db.execute(q + " ORDER BY feeds_id", args)]

    def due_feeds(self, now: datetime) -> list[Feed]:
        rows = self._db.execute(
            "SELECT feeds_id, media_id, url, active, type, poll_interval_s, next_poll_at"
            " FROM feeds WHERE active = 1 AND next_poll_at <= ? ORDER BY feeds_id",
            (fmt_dt(now),),
        ).fetchall()
        return [self._feed_row(r) for r in rows]

    def update_feed_schedule(self, feeds_id: int, poll_interval: timedelta, next_poll_at: datetime) -> None:
        with self._lock:
            self._db.execute(
                "UPDATE feeds SET poll_interval_s = ?, next_poll_at = ? WHERE feeds_id = ?",
                (int(poll_interval.total_seconds()), fmt_dt(next_poll_at), feeds_id),
            )
            self._db.commit()

    @staticmethod
    def _feed_row(row) -> Feed:
        return Feed(
            row[0], row[1], row[2], bool(row[3]), row[4],
            timedelta(seconds=row[5]), parse_dt(row[6]),
        )

    # -- stories ----------------------------------------------------------

    def match_or_insert_story(self, item: FeedItem, media_id: int) -> tuple[int, bool]:
        """Match by normalized URL/GUID, then by title within ±7 days on the
        same media source; insert a new story when nothing matches."""
        if not (item.url or item.guid or item.title):
            raise RejectedItemError("feed item has no url, guid, or title")
        if not self.has_media(media_id):
            raise UnknownTargetError(f"unknown media id {media_id}")

        with self._lock:
            keys = []
            for raw in (item.url, item.guid):
                if raw:
                    k = story_key(raw)
                    if k not in keys:
                        keys.append(k)
            for k in keys:
                row = self._db.execute(
                    "SELECT stories_id FROM story_keys WHERE key = ?", (k,)
                ).fetchone()
                if row:
                    return row[0], False

            pub = item.pub_date or self.clock.now()
            ntitle = normalize_title(item.title)
            if ntitle:
                rows = self._db.execute(
                    "SELECT stories_id, publish_date FROM stories"
                    " WHERE media_id = ? AND normalized_title = ?",
                    (media_id, ntitle),
                ).fetchall()
                for sid, pdate in rows:
                    if abs(parse_dt(pdate) - pub) <= TITLE_MATCH_WINDOW:
                        return sid, False

            next_id = self._db.execute(
                "SELECT COALESCE(MAX(stories_id), 0) + 1 FROM stories"
            ).fetchone()[0]
            url = item.url or item.guid
            guid = item.guid or item.url  # guid guessed to be the URL when absent
            nurl = keys[0] if keys else f"urn:newsflow:story:{next_id}"
            self._db.execute(
                "INSERT INTO stories (stories_id, media_id, title, publish_date, collect_date,"
                " url, guid, language, normalized_url, normalized_title)"
                " VALUES (?, ?, ?, ?, ?, ?, ?, 'und', ?, ?)",
                (next_id, media_id, item.title, fmt_dt(pub), fmt_dt(self.clock.now()),
                 url, guid, nurl, ntitle),
            )
            for k in keys:
                self._db.execute(
                    "INSERT OR IGNORE INTO story_keys (key, stories_id) VALUES (?, ?)",
                    (k, next_id),
                )
            self._db.commit()
            return next_id, True

    def story(self, stories_id: int) -> Story:
        row = self._db.execute(
            "SELECT stories_id, media_id, title, publish_date, collect_date, url, guid,"
            " language, normalized_url, normalized_title FROM stories WHERE stories_id = ?",
            (stories_id,),
        ).fetchone()
        if not row:
            raise UnknownTargetError(f"unknown story id {stories_id}")
        return self._story_row(row)

    def has_story(self, stories_id: int) -> bool:
        return (
            self._db.execute("SELECT 1 FROM stories WHERE stories_id = ?", (stories_id,)).fetchone()
            is not None
        )

    def story_by_key(self, url_or_guid: str) -> int | None:
        row = self._db.execute(
            "SELECT stories_id FROM story_keys WHERE key = ?", (story_key(url_or_guid),)
        ).fetchone()
        return row[0] if row else None

    def list_stories(self, after_id: int = 0, limit: int | None = None) -> list[Story]:
        q = (
            "SELECT stories_id, media_id, title, publish_date, collect_date, url, guid,"
            " language, normalized_url, normalized_title FROM stories"
            " WHERE stories_id > ? ORDER BY stories_id"
        )
        args: list = [after_id]
        if limit is not None:
            q += " LIMIT ?"
            args.append(limit)
        return [self._story_row(r) for r in self._db.execute(q, args)]

    def story_count(self) -> int:
        return self._db.execute("SELECT COUNT(*) FROM stories").fetchone()[0]

    def set_story_language(self, stories_id: int, language: str) -> None:
        if not (language == "und" or (len(language) == 2 and language.isalpha() and language.islower())):
            raise NewsflowError(f"bad language code {language!r}")
        with self._lock:
            self._db.execute(
                "UPDATE stories SET language = ? WHERE stories_id = ?", (language, stories_id)
            )
            self._db.commit()

    def _story_row(self, row) -> Story:
        return Story(
            stories_id=row[0], media_id=row[1], title=row[2],
            publish_date=parse_dt(row[3]), collect_date=parse_dt(row[4]),
            url=row[5], guid=row[6], language=row[7],
            tags=self.story_tags(row[0]),
            normalized_url=row[8], normalized_title=row[9],
        )

    # -- story text, outlinks, sentence dedup ------------------------------

    def save_story_text(self, stories_id: int, extracted_text: str, sentences: list[str]) -> None:
        if not self.has_story(stories_id):
            raise UnknownTargetError(f"unknown story id {stories_id}")
        with self._lock:
            self._db.execute(
                "INSERT OR REPLACE INTO story_texts (stories_id, extracted_text, sentences)"
                " VALUES (?, ?, ?)",
                (stories_id, extracted_text, json.dumps(sentences, ensure_ascii=False)),
            )
            self._db.commit()

    def story_text(self, stories_id: int) -> StoryText | None:
        row = self._db.execute(
            "SELECT extracted_text, sentences FROM story_texts WHERE stories_id = ?",
            (stories_id,),
        ).fetchone()
        if not row:
            return None
        return StoryText(stories_id, row[0], json.loads(row[1]))

    def set_story_outlinks(self, stories_id: int, urls: list[str]) -> None:
        with self._lock:
            self._db.execute("DELETE FROM story_outlinks WHERE stories_id = ?", (stories_id,))
            self._db.executemany(
                "INSERT INTO story_outlinks (stories_id, seq, url) VALUES (?, ?, ?)",
                [(stories_id, i, u) for i, u in enumerate(urls)],
            )
            self._db.commit()

    def story_outlinks(self, stories_id: int) -> list[str]:
        rows = self._db.execute(
            "SELECT url FROM story_outlinks WHERE stories_id = ? ORDER BY seq", (stories_id,)
        ).fetchall()
        return [r[0] for r in rows]

    def filter_new_sentences(self, media_id: int, day: date, sentences: list[str]) -> list[str]:
        """Keep sentences unseen for (media_id, day), record them, drop the rest.

        First occurrence wins, including duplicates inside the same batch.
        """
        kept = []
        with self._lock:
            for s in sentences:
                h = sentence_hash(s)
                cur = self._db.execute(
                    "INSERT OR IGNORE INTO sentence_seen (media_id, day, hash) VALUES (?, ?, ?)",
                    (media_id, day.isoformat(), h),
                )
                if cur.rowcount:
                    kept.append(s)
            self._db.commit()
        return kept

    # -- tags ---------------------------------------------------------------

    def upsert_tag_set(self, name: str, label: str = "", description: str = "") -> int:
        if not name:
            raise NewsflowError("tag set name must be non-empty")
        with self._lock:
            row = self._db.execute(
                "SELECT tag_sets_id FROM tag_sets WHERE name = ?", (name,)
            ).fetchone()
            if row:
                return row[0]
            cur = self._db.execute(
                "INSERT INTO tag_sets (name, label, description) VALUES (?, ?, ?)",
                (name, label, description),
            )
            self._db.commit()
            return cur.lastrowid

    def upsert_tag(self, tag_set_name: str, tag_name: str, label: str = "", description: str = "") -> int:
        if not tag_name:
            raise NewsflowError("tag name must be non-empty")
        with self._lock:
            set_id = self.upsert_tag_set(tag_set_name)
            row = self._db.execute(
                "SELECT tags_id FROM tags WHERE tag_sets_id = ? AND tag = ?", (set_id, tag_name)
            ).fetchone()
            if row:
                return row[0]
            cur = self._db.execute(
                "INSERT INTO tags (tag_sets_id, tag, label, description) VALUES (?, ?, ?, ?)",
                (set_id, tag_name, label, description),
            )
            self._db.commit()
            return cur.lastrowid

    def tag(self, tags_id: int) -> Tag:
        row = self._db.execute(
            "SELECT tags_id, tag_sets_id, tag, label, description FROM tags WHERE tags_id = ?",
            (tags_id,),
        ).fetchone()
        if not row:
            raise UnknownTargetError(f"unknown tag id {tags_id}")
        return Tag(*row)

    def list_tag_sets(self) -> list[TagSet]:
        rows = self._db.execute(
            "SELECT tag_sets_id, name, label, description FROM tag_sets ORDER BY tag_sets_id"
        ).fetchall()
        return [TagSet(*r) for r in rows]

    def list_tags(self, tag_sets_id: int | None = None) -> list[Tag]:
        q = "SELECT tags_id, tag_sets_id, tag, label, description FROM tags"
        args: tuple = ()
        if tag_sets_id is not None:
            q += " WHERE tag_sets_id = ?"
            args = (tag_sets_id,)
        return [Tag(*r) for r in self._db.execute(q + " ORDER BY tags_id", args)]

    def attach_tag_to_story(self, stories_id: int, tags_id: int) -> None:
        if not self.has_story(stories_id):
            raise UnknownTargetError(f"unknown story id {stories_id}")
        self.tag(tags_id)
        with self._lock:
            self._db.execute(
                "INSERT OR IGNORE INTO story_tags (stories_id, tags_id) VALUES (?, ?)",
                (stories_id, tags_id),
            )
            self._db.commit()

    def attach_tag_to_media(self, media_id: int, tags_id: int) -> None:
        if not self.has_media(media_id):
            raise UnknownTargetError(f"unknown media id {media_id}")
        self.tag(tags_id)
        with self._lock:
            self._db.execute(
                "INSERT OR IGNORE INTO media_tags (media_id, tags_id) VALUES (?, ?)",
                (media_id, tags_id),
            )
            self._db.commit()

    def story_tags(self, stories_id: int) -> set[int]:
        rows = self._db.execute(
            "SELECT tags_id FROM story_tags WHERE stories_id = ?", (stories_id,)
        ).fetchall()
        return {r[0] for r in rows}

    def media_tags(self, media_id: int) -> set[int]:
        rows = self._db.execute(
            "SELECT tags_id FROM media_tags WHERE media_id = ?", (media_id,)
        ).fetchall()
        return {r[0] for r in rows}

    def media_with_tag(self, tags_id: int) -> set[int]:
        rows = self._db.execute(
            "SELECT media_id FROM media_tags WHERE tags_id = ?", (tags_id,)
        ).fetchall()
        return {r[0] for r in rows}

    # -- topics ---------------------------------------------------------------

    def add_topic(
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
        if start_date > end_date:
            raise NewsflowError("topic start_date must be <= end_date")
        if max_rounds < 0:
            raise NewsflowError("max_rounds must be >= 0")
        with self._lock:
            cur = self._db.execute(
                "INSERT INTO topics (name, seed_query, start_date, end_date, seed_media,"
                " seed_collections, seed_urls, max_rounds) VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
                (
                    name, seed_query, start_date.isoformat(), end_date.isoformat(),
                    json.dumps(sorted(seed_media or set())),
                    json.dumps(sorted(seed_collections or set())),
                    json.dumps(seed_urls or []),
                    max_rounds,
                ),
            )
            self._db.commit()
            return self.topic(cur.lastrowid)

    def topic(self, topics_id: int) -> Topic:
        row = self._db.execute(
            "SELECT topics_id, name, seed_query, start_date, end_date, seed_media,"
            " seed_collections, seed_urls, max_rounds FROM topics WHERE topics_id = ?",
            (topics_id,),
        ).fetchone()
        if not row:
            raise UnknownTargetError(f"unknown topic id {topics_id}")
        return Topic(
            topics_id=row[0], name=row[1], seed_query=row[2],
            start_date=parse_date(row[3]), end_date=parse_date(row[4]),
            seed_media=set(json.loads(row[5])), seed_collections=set(json.loads(row[6])),
            seed_urls=json.loads(row[7]), max_rounds=row[8],
        )

    def has_topic(self, topics_id: int) -> bool:
        return (
            self._db.execute("SELECT 1 FROM topics WHERE topics_id = ?", (topics_id,)).fetchone()
            is not None
        )

    def list_topics(self) -> list[Topic]:
        ids = [r[0] for r in self._db.execute("SELECT topics_id FROM topics ORDER BY topics_id")]
        return [self.topic(i) for i in ids]

    def append_seed_urls(self, topics_id: int, urls: list[str]) -> None:
        with self._lock:
            topic = self.topic(topics_id)
            merged = list(topic.seed_urls)
            for u in urls:
                if u not in merged:
                    merged.append(u)
            self._db.execute(
                "UPDATE topics SET seed_urls = ? WHERE topics_id = ?",
                (json.dumps(merged), topics_id),
            )
            self._db.commit()

    def reset_topic_run(self, topics_id: int) -> None:
        """Clear membership, links, attempts, and timespans before a fresh spider run."""
        with self._lock:
            self._db.execute("DELETE FROM topic_stories WHERE topics_id = ?", (topics_id,))
            self._db.execute("DELETE FROM topic_links WHERE topics_id = ?", (topics_id,))
            self._db.execute("DELETE FROM topic_attempts WHERE topics_id = ?", (topics_id,))
            self._db.execute(
                "DELETE FROM timespan_stories WHERE timespans_id IN"
                " (SELECT timespans_id FROM timespans WHERE topics_id = ?)",
                (topics_id,),
            )
            self._db.execute("DELETE FROM timespans WHERE topics_id = ?", (topics_id,))
            self._db.commit()

    def add_topic_story(self, topics_id: int, stories_id: int, discovered_round: int, via: str) -> None:
        with self._lock:
            self._db.execute(
                "INSERT OR IGNORE INTO topic_stories (topics_id, stories_id, discovered_round, via)"
                " VALUES (?, ?, ?, ?)",
                (topics_id, stories_id, discovered_round, via),
            )
            self._db.commit()

    def topic_stories(self, topics_id: int) -> list[TopicStory]:
        rows = self._db.execute(
            "SELECT topics_id, stories_id, discovered_round, via FROM topic_stories"
            " WHERE topics_id = ? ORDER BY stories_id",
            (topics_id,),
        ).fetchall()
        return [TopicStory(*r) for r in rows]

    def topic_story_ids(self, topics_id: int) -> set[int]:
        rows = self._db.execute(
            "SELECT stories_id FROM topic_stories WHERE topics_id = ?", (topics_id,)
        ).fetchall()
        return {r[0] for r in rows}

    def add_topic_link(self, topics_id: int, source_stories_id: int, ref_stories_id: int) -> None:
        if source_stories_id == ref_stories_id:
            return
        with self._lock:
            self._db.execute(
                "INSERT OR IGNORE INTO topic_links (topics_id, source_stories_id, ref_stories_id)"
                " VALUES (?, ?, ?)",
                (topics_id, source_stories_id, ref_stories_id),
            )
            self._db.commit()

    def topic_links(self, topics_id: int) -> list[StoryLink]:
        rows = self._db.execute(
            "SELECT topics_id, source_stories_id, ref_stories_id FROM topic_links"
            " WHERE topics_id = ? ORDER BY source_stories_id, ref_stories_id",
            (topics_id,),
        ).fetchall()
        return [StoryLink(*r) for r in rows]

    def record_topic_attempt(self, topics_id: int, url: str, status: int, note: str = "") -> None:
        with self._lock:
            self._db.execute(
                "INSERT OR IGNORE INTO topic_attempts (topics_id, url, status, note)"
                " VALUES (?, ?, ?, ?)",
                (topics_id, url, status, note),
            )
            self._db.commit()

    def topic_attempted_urls(self, topics_id: int) -> set[str]:
        rows = self._db.execute(
            "SELECT url FROM topic_attempts WHERE topics_id = ?", (topics_id,)
        ).fetchall()
        return {r[0] for r in rows}

    def save_timespan(self, topics_id: int, period: str, start: date, end: date, story_ids: set[int]) -> Timespan:
        with self._lock:
            cur = self._db.execute(
                "INSERT INTO timespans (topics_id, period, start_date, end_date) VALUES (?, ?, ?, ?)",
                (topics_id, period, start.isoformat(), end.isoformat()),
            )
            ts_id = cur.lastrowid
            self._db.executemany(
                "INSERT INTO timespan_stories (timespans_id, stories_id) VALUES (?, ?)",
                [(ts_id, sid) for sid in sorted(story_ids)],
            )
            self._db.commit()
            return Timespan(ts_id, topics_id, period, start, end, set(story_ids))

    def timespans(self, topics_id: int) -> list[Timespan]:
        rows = self._db.execute(
            "SELECT timespans_id, topics_id, period, start_date, end_date FROM timespans"
            " WHERE topics_id = ? ORDER BY timespans_id",
            (topics_id,),
        ).fetchall()
        out = []
        for r in rows:
            ids = {
                x[0]
                for x in self._db.execute(
                    "SELECT stories_id FROM timespan_stories WHERE timespans_id = ?", (r[0],)
                )
            }
            out.append(Timespan(r[0], r[1], r[2], parse_date(r[3]), parse_date(r[4]), ids))
        return out

    def save_url_shares(self, topics_id: int, stats: list) -> None:
        with self._lock:
            self._db.executemany(
                "INSERT OR REPLACE INTO topic_url_shares"
                " (topics_id, url, post_count, author_count, channel_count) VALUES (?, ?, ?, ?, ?)",
                [(topics_id, s.url, s.post_count, s.author_count, s.channel_count) for s in stats],
            )
            self._db.commit()

    def save_coshares(self, topics_id: int, edges: dict[tuple[int, int], int]) -> None:
        with self._lock:
            self._db.executemany(
                "INSERT OR REPLACE INTO topic_coshares (topics_id, media_a, media_b, weight)"
                " VALUES (?, ?, ?, ?)",
                [(topics_id, a, b, w) for (a, b), w in sorted(edges.items())],
            )
            self._db.commit()

    def url_shares(self, topics_id: int) -> list[tuple[str, int, int, int]]:
        return self._db.execute(
            "SELECT url, post_count, author_count, channel_count FROM topic_url_shares"
            " WHERE topics_id = ? ORDER BY url",
            (topics_id,),
        ).fetchall()

    def coshares(self, topics_id: int) -> dict[tuple[int, int], int]:
        rows = self._db.execute(
            "SELECT media_a, media_b, weight FROM topic_coshares WHERE topics_id = ?",
            (topics_id,),
        ).fetchall()
        return {(r[0], r[1]): r[2] for r in rows}

    # -- CSV bulk import/export ---------------------------------------------

    def export_media_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f)
            w.writerow(MEDIA_CSV_HEADER)
            for m in self.list_media():
                w.writerow([m.media_id, m.name, m.url, m.start_date.isoformat()])

    def import_media_csv(self, path: str | Path) -> int:
        count = 0
        with open(path, newline="", encoding="utf-8") as f:
            r = csv.reader(f)
            header = next(r, None)
            if header != MEDIA_CSV_HEADER:
                raise NewsflowError(f"media csv must start with header {','.join(MEDIA_CSV_HEADER)}")
            with self._lock:
                for row in r:
                    if len(row) != 4:
                        continue
                    self._db.execute(
                        "INSERT INTO media (media_id, name, url, start_date) VALUES (?, ?, ?, ?)",
                        (int(row[0]), row[1], row[2], parse_date(row[3]).isoformat()),
                    )
                    count += 1
                self._db.commit()
        return count

    def export_feeds_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f)
            w.writerow(FEEDS_CSV_HEADER)
            for feed in self.list_feeds():
                w.writerow([
                    feed.feeds_id, feed.media_id, feed.url,
                    "true" if feed.active else "false", feed.type,
                ])

    def import_feeds_csv(self, path: str | Path) -> int:
        count = 0
        with open(path, newline="", encoding="utf-8") as f:
            r = csv.reader(f)
            header = next(r, None)
            if header != FEEDS_CSV_HEADER:
                raise NewsflowError(f"feeds csv must start with header {','.join(FEEDS_CSV_HEADER)}")
            with self._lock:
                now = self.clock.now()
                for row in r:
                    if len(row) != 5:
                        continue
                    self._db.execute(
                        "INSERT INTO feeds (feeds_id, media_id, url, active, type,"
                        " poll_interval_s, next_poll_at) VALUES (?, ?, ?, ?, ?, ?, ?)",
                        (
                            int(row[0]), int(row[1]), row[2],
                            int(row[3].strip().lower() in ("true", "1", "yes")),
                            row[4], int(MIN_POLL_INTERVAL.total_seconds()), fmt_dt(now),
                        ),
                    )
                    count += 1
                self._db.commit()
        return count

    # -- integrity ------------------------------------------------------------

    def integrity_errors(self) -> list[str]:
        """Referential-integrity scan used by tests; empty list means healthy."""
        problems = []
        for sid, mid in self._db.execute("SELECT stories_id, media_id FROM stories"):
            if not self.has_media(mid):
                problems.append(f"story {sid} references missing media {mid}")
        for fid, mid in self._db.execute("SELECT feeds_id, media_id FROM feeds"):
            if not self.has_media(mid):
                problems.append(f"feed {fid} references missing media {mid}")
        for tid, tsid in self._db.execute("SELECT tags_id, tag_sets_id FROM tags"):
            row = self._db.execute(
                "SELECT 1 FROM tag_sets WHERE tag_sets_id = ?", (tsid,)
            ).fetchone()
            if not row:
                problems.append(f"tag {tid} references missing tag set {tsid}")
        seen: dict[str, int] = {}
        for sid, nurl in self._db.execute("SELECT stories_id, normalized_url FROM stories"):
            if nurl in seen:
                problems.append(f"stories {seen[nurl]} and {sid} share normalized_url {nurl!r}")
            seen[nurl] = sid
        return problems

    @staticmethod
    def publish_week(publish_date: datetime) -> date:
        return sunday_of(publish_date.date())
