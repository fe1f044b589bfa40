"""In-memory inverted index with positional postings and field registers.

Writes are serialized by a lock; searches read committed snapshots. The
index is rebuilt from the store at startup (the service keeps no state of
its own across restarts).
"""

from __future__ import annotations

import bisect
import re
import threading
from collections import Counter
from dataclasses import dataclass, field as dc_field
from datetime import date, datetime, timedelta
from functools import lru_cache
from importlib import resources

from ..models import Story
from ..timeutil import month_of, parse_dt, sunday_of
from .ast import And, Field, Not, Or, Phrase, Prefix, QueryNode, Term

_TOKEN_RE = re.compile(r"\w+")


def tokenize(text: str) -> list[str]:
    """Unicode word tokens, lowercased, in document order."""
    return _TOKEN_RE.findall(text.lower())


@lru_cache(maxsize=None)
def stopwords(language: str) -> frozenset[str]:
    try:
        text = (
            resources.files("newsflow.query")
            .joinpath(f"data/stopwords/{language}.txt")
            .read_text(encoding="utf-8")
        )
    except (FileNotFoundError, ModuleNotFoundError):
        return frozenset()
    return frozenset(w.strip() for w in text.splitlines() if w.strip() and not w.startswith("#"))


@dataclass
class _StoryEntry:
    media_id: int
    publish_date: datetime
    language: str
    story_tags: set[int] = dc_field(default_factory=set)
    media_tags: set[int] = dc_field(default_factory=set)
    timespans: set[int] = dc_field(default_factory=set)
    token_counts: dict[str, int] = dc_field(default_factory=dict)


class PostingsIndex:
    def __init__(self):
        self._postings: dict[str, dict[int, tuple[int, ...]]] = {}
        self._entries: dict[int, _StoryEntry] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, stories_id: int) -> bool:
        return stories_id in self._entries

    # -- writes ------------------------------------------------------------

    def index_story(self, story: Story, text: str, media_tags: set[int] | None = None) -> None:
        """Tokenize and register a story; re-indexing the same id is a no-op."""
        with self._lock:
            if story.stories_id in self._entries:
                return
            entry = _StoryEntry(
                media_id=story.media_id,
                publish_date=story.publish_date,
                language=story.language,
                story_tags=set(story.tags),
                media_tags=set(media_tags or ()),
            )
            positions: dict[str, list[int]] = {}
            for pos, tok in enumerate(tokenize(text)):
                positions.setdefault(tok, []).append(pos)
            for tok, plist in positions.items():
                self._postings.setdefault(tok, {})[story.stories_id] = tuple(plist)
                entry.token_counts[tok] = len(plist)
            self._entries[story.stories_id] = entry

    def set_language(self, stories_id: int, language: str) -> None:
        with self._lock:
            if stories_id in self._entries:
                self._entries[stories_id].language = language

    def set_story_tags(self, stories_id: int, tags: set[int]) -> None:
        with self._lock:
            if stories_id in self._entries:
                self._entries[stories_id].story_tags = set(tags)

    def set_media_tags(self, media_id: int, tags: set[int]) -> None:
        with self._lock:
            for entry in self._entries.values():
                if entry.media_id == media_id:
                    entry.media_tags = set(tags)

    def add_timespan(self, stories_id: int, timespans_id: int) -> None:
        with self._lock:
            if stories_id in self._entries:
                self._entries[stories_id].timespans.add(timespans_id)

    # -- searches ----------------------------------------------------------

    def search(self, ast: QueryNode, within: set[int] | None = None) -> list[int]:
        """Story ids matching `ast`, ascending; `within` restricts the universe."""
        universe = set(self._entries) if within is None else (within & set(self._entries))
        return sorted(self._eval(ast, universe))

    def _eval(self, node: QueryNode, universe: set[int]) -> set[int]:
        if isinstance(node, Term):
            return set(self._postings.get(node.text, ())) & universe
        if isinstance(node, Prefix):
            out: set[int] = set()
            for tok, postings in self._postings.items():
                if tok.startswith(node.stem):
                    out.update(postings)
            return out & universe
        if isinstance(node, Phrase):
            return {sid for sid in self._phrase_candidates(node) if sid in universe}
        if isinstance(node, Field):
            if node.name == "story_id":
                return {int(node.value)} & universe
            return {sid for sid in universe if self._field_match(node, self._entries[sid])}
        if isinstance(node, Not):
            return universe - self._eval(node.child, universe)
        if isinstance(node, And):
            result = universe
            for child in node.children:
                result = result & self._eval(child, universe)
                if not result:
                    break
            return result
        if isinstance(node, Or):
            out = set()
            for child in node.children:
                out |= self._eval(child, universe)
            return out
        raise TypeError(f"not a query node: {node!r}")

    def _phrase_candidates(self, node: Phrase) -> set[int]:
        postings = [self._postings.get(tok) for tok in node.tokens]
        if any(p is None for p in postings):
            return set()
        candidates = set(postings[0])
        for p in postings[1:]:
            candidates &= set(p)
        window = node.proximity if node.proximity is not None else len(node.tokens) - 1
        return {
            sid
            for sid in candidates
            if _ordered_within(window, [postings[k][sid] for k in range(len(postings))])
        }

    def _field_match(self, node: Field, entry: _StoryEntry) -> bool:
        name, value = node.name, node.value
        if name == "media_id":
            return entry.media_id == int(value)
        if name == "language":
            return entry.language == value
        if name == "tags_id_stories":
            return int(value) in entry.story_tags
        if name == "tags_id_media":
            return int(value) in entry.media_tags
        if name == "timespans_id":
            return int(value) in entry.timespans
        if name == "publish_date":
            return entry.publish_date == parse_dt(value)
        if name == "publish_day":
            return entry.publish_date.date() == parse_dt(value).date()
        if name == "publish_week":
            return sunday_of(entry.publish_date.date()) == sunday_of(parse_dt(value).date())
        if name == "publish_month":
            return month_of(entry.publish_date.date()) == month_of(parse_dt(value).date())
        if name == "publish_year":
            return entry.publish_date.year == parse_dt(value).year
        raise TypeError(f"unhandled field {name}")

    # -- derived views -------------------------------------------------------

    def word_counts(self, ast: QueryNode, top_n: int, language_for_stopwords: str = "en") -> list[tuple[str, int]]:
        """Exact token frequencies over matching stories, stopwords removed.

        Top `top_n` by count, ties broken lexicographically.
        """
        if top_n < 1:
            raise ValueError("top_n must be >= 1")
        drop = stopwords(language_for_stopwords)
        counts: Counter[str] = Counter()
        for sid in self.search(ast):
            for tok, c in self._entries[sid].token_counts.items():
                if tok not in drop:
                    counts[tok] += c
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return ranked[:top_n]

    def attention_over_time(self, ast: QueryNode, bucket: str = "week") -> list[tuple[date, int]]:
        """Matching-story counts per publish-date bucket; weeks run Sunday-Saturday.

        Empty buckets inside the covered span are emitted with count 0.
        """
        if bucket not in ("day", "week", "month"):
            raise ValueError(f"bad bucket {bucket!r}")
        counts: Counter[date] = Counter()
        for sid in self.search(ast):
            d = self._entries[sid].publish_date.date()
            counts[_bucket_start(d, bucket)] += 1
        if not counts:
            return []
        out = []
        cursor = min(counts)
        last = max(counts)
        while cursor <= last:
            out.append((cursor, counts.get(cursor, 0)))
            cursor = _next_bucket(cursor, bucket)
        return out

def _bucket_start(d: date, bucket: str) -> date:
    if bucket == "day":
        return d
    if bucket == "week":
        return sunday_of(d)
    return month_of(d)


def _next_bucket(d: date, bucket: str) -> date:
    if bucket == "day":
        return d + timedelta(days=1)
    if bucket == "week":
        return d + timedelta(days=7)
    return date(d.year + 1, 1, 1) if d.month == 12 else date(d.year, d.month + 1, 1)


def _ordered_within(window: int, position_lists: list[tuple[int, ...]]) -> bool:
    """True when tokens occur in order with total span <= window."""
    for start in position_lists[0]:
        prev = start
        ok = True
        for positions in position_lists[1:]:
            i = bisect.bisect_right(positions, prev)
            if i == len(positions):
                ok = False
                break
            prev = positions[i]
        if ok and prev - start <= window:
            return True
    return False


def story_matches(ast: QueryNode, story: Story, text: str, media_tags: set[int] | None = None) -> bool:
    """Standalone seed-query test: evaluate over a one-story scratch index so
    the semantics are identical to a full index search."""
    scratch = PostingsIndex()
    scratch.index_story(story, text, media_tags)
    return bool(scratch.search(ast))
