"""Independent oracles: naive per-story query evaluation and a brute-force
BFS spider oracle. These deliberately share no evaluation code with the
package; they re-derive everything from first principles."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta

from newsflow.query.ast import And, Field, Not, Or, Phrase, Prefix, Term

# -- naive query evaluation ---------------------------------------------------


@dataclass
class OracleStory:
    stories_id: int
    media_id: int
    publish_date: datetime
    language: str
    text: str
    story_tags: set[int] = field(default_factory=set)
    media_tags: set[int] = field(default_factory=set)
    timespans: set[int] = field(default_factory=set)

    @property
    def tokens(self) -> list[str]:
        return re.findall(r"\w+", self.text.lower())


def naive_search(ast, stories: list[OracleStory]) -> list[int]:
    return sorted(s.stories_id for s in stories if _matches(ast, s))


def _matches(node, story: OracleStory) -> bool:
    if isinstance(node, Term):
        return node.text in story.tokens
    if isinstance(node, Prefix):
        return any(tok.startswith(node.stem) for tok in story.tokens)
    if isinstance(node, Phrase):
        return _phrase_matches(node, story.tokens)
    if isinstance(node, Field):
        return _field_matches(node, story)
    if isinstance(node, Not):
        return not _matches(node.child, story)
    if isinstance(node, And):
        return all(_matches(c, story) for c in node.children)
    if isinstance(node, Or):
        return any(_matches(c, story) for c in node.children)
    raise TypeError(node)


def _phrase_matches(node: Phrase, tokens: list[str]) -> bool:
    window = node.proximity if node.proximity is not None else len(node.tokens) - 1
    starts = [i for i, tok in enumerate(tokens) if tok == node.tokens[0]]
    for start in starts:
        pos = start
        found = True
        for want in node.tokens[1:]:
            nxt = None
            for j in range(pos + 1, len(tokens)):
                if tokens[j] == want:
                    nxt = j
                    break
            if nxt is None:
                found = False
                break
            pos = nxt
        if found and pos - start <= window:
            return True
    return False


def _sunday(d: date) -> date:
    # Walk backwards to Sunday; independent of the package's arithmetic.
    while d.strftime("%A") != "Sunday":
        d -= timedelta(days=1)
    return d


def _field_matches(node: Field, story: OracleStory) -> bool:
    name, value = node.name, node.value
    if name == "story_id":
        return story.stories_id == int(value)
    if name == "media_id":
        return story.media_id == int(value)
    if name == "language":
        return story.language == value
    if name == "tags_id_stories":
        return int(value) in story.story_tags
    if name == "tags_id_media":
        return int(value) in story.media_tags
    if name == "timespans_id":
        return int(value) in story.timespans
    parsed = datetime.strptime(value, "%Y-%m-%d %H:%M:%S" if " " in value else "%Y-%m-%d")
    if name == "publish_date":
        return story.publish_date == parsed
    if name == "publish_day":
        return story.publish_date.date() == parsed.date()
    if name == "publish_week":
        return _sunday(story.publish_date.date()) == _sunday(parsed.date())
    if name == "publish_month":
        return (story.publish_date.year, story.publish_date.month) == (parsed.year, parsed.month)
    if name == "publish_year":
        return story.publish_date.year == parsed.year
    raise TypeError(name)


# -- random AST generation ------------------------------------------------------


class AstGenerator:
    """Seeded random query ASTs over a corpus vocabulary."""

    def __init__(self, rng: random.Random, vocabulary: list[str], stories: list[OracleStory]):
        self.rng = rng
        self.vocab = vocabulary + ["zzznever", "qqqabsent"]
        self.stories = stories

    def ast(self, depth: int = 0):
        choices = ["term", "prefix", "phrase", "field"]
        if depth < 3:
            choices += ["and", "and", "or", "or", "not"]
        kind = self.rng.choice(choices)
        if kind == "term":
            return Term(self.rng.choice(self.vocab))
        if kind == "prefix":
            word = self.rng.choice(self.vocab)
            return Prefix(word[: self.rng.randint(1, max(1, len(word) - 1))])
        if kind == "phrase":
            story = self.rng.choice(self.stories)
            tokens = story.tokens
            if len(tokens) < 2:
                return Term(self.rng.choice(self.vocab))
            k = self.rng.randint(2, min(4, len(tokens)))
            if self.rng.random() < 0.5:
                start = self.rng.randrange(len(tokens) - k + 1)
                chosen = tuple(tokens[start : start + k])
            else:
                chosen = tuple(self.rng.choice(self.vocab) for _ in range(k))
            proximity = self.rng.choice([None, None, k - 1, k + 1, 2 * k])
            return Phrase(chosen, proximity)
        if kind == "field":
            return self._field()
        if kind == "not":
            # oracle-side validity: Not must not end up at the root; the caller
            # wraps the result when needed.
            return Not(self.ast(depth + 1))
        n = self.rng.randint(2, 4)
        children = tuple(self.ast(depth + 1) for _ in range(n))
        return And(children) if kind == "and" else Or(children)

    def query(self):
        node = self.ast()
        if isinstance(node, Not):
            node = And((Term(self.rng.choice(self.vocab)), node))
        return node

    def _field(self):
        story = self.rng.choice(self.stories)
        name = self.rng.choice(
            ["story_id", "media_id", "language", "tags_id_stories", "tags_id_media",
             "publish_date", "publish_day", "publish_week", "publish_month", "publish_year"]
        )
        if name == "story_id":
            return Field(name, str(story.stories_id))
        if name == "media_id":
            return Field(name, str(story.media_id))
        if name == "language":
            return Field(name, story.language)
        if name == "tags_id_stories":
            pool = sorted(story.story_tags) or [999]
            return Field(name, str(self.rng.choice(pool)))
        if name == "tags_id_media":
            pool = sorted(story.media_tags) or [999]
            return Field(name, str(self.rng.choice(pool)))
        d = story.publish_date
        if name == "publish_date" and self.rng.random() < 0.5:
            return Field(name, d.strftime("%Y-%m-%d %H:%M:%S"))
        return Field(name, d.strftime("%Y-%m-%d"))


def synthetic_corpus(rng: random.Random, n_stories: int) -> list[OracleStory]:
    vocab = [f"w{i}" for i in range(60)] + ["vote", "mail", "fraud", "ballot", "county"]
    languages = ["en", "es", "fr", "und"]
    stories = []
    base = datetime(2020, 9, 1)
    for sid in range(1, n_stories + 1):
        n_tokens = rng.randint(0, 40)
        text = " ".join(rng.choice(vocab) for _ in range(n_tokens))
        stories.append(
            OracleStory(
                stories_id=sid,
                media_id=rng.randint(1, 20),
                publish_date=base + timedelta(hours=rng.randint(0, 24 * 60)),
                language=rng.choice(languages),
                text=text,
                story_tags={rng.randint(1, 8) for _ in range(rng.randint(0, 3))},
                media_tags={rng.randint(10, 14) for _ in range(rng.randint(0, 2))},
            )
        )
    return stories


# -- spider BFS oracle ---------------------------------------------------------


@dataclass
class OraclePage:
    url: str
    matches: bool
    media: str  # registrable domain / site key
    links: list[str] = field(default_factory=list)


def spider_oracle(
    pages: dict[str, OraclePage],
    seed_urls: set[str],
    max_rounds: int,
) -> tuple[dict[str, int], set[tuple[str, str]], dict[str, int], dict[str, int]]:
    """Brute-force reachability: BFS through matching pages only.

    Returns (member url -> round, member link edges, story in-link counts by
    url, media in-link counts by site key).
    """
    rounds: dict[str, int] = {u: 0 for u in seed_urls if pages[u].matches}
    frontier = set(rounds)
    for k in range(1, max_rounds + 1):
        next_frontier = set()
        for url in frontier:
            for target in pages[url].links:
                if target in pages and target not in rounds and pages[target].matches:
                    rounds[target] = k
                    next_frontier.add(target)
        frontier = next_frontier
        if not frontier:
            break

    members = set(rounds)
    edges = {
        (a, b)
        for a in members
        for b in pages[a].links
        if b in members and b != a
    }

    story_sources: dict[str, set[str]] = {u: set() for u in members}
    media_sources: dict[str, set[str]] = {pages[u].media: set() for u in members}
    for a, b in edges:
        if pages[a].media != pages[b].media:
            story_sources[b].add(pages[a].media)
            media_sources[pages[b].media].add(pages[a].media)
    return (
        rounds,
        edges,
        {u: len(srcs) for u, srcs in story_sources.items()},
        {m: len(srcs) for m, srcs in media_sources.items()},
    )
