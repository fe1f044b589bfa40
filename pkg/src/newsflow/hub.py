"""Wires the store, index, fetcher, and clock into one runtime object."""

from __future__ import annotations

from pathlib import Path

from .clock import Clock, SystemClock
from .ingest.crawler import Crawler
from .ingest.fetcher import FixtureFetcher, LiveFetcher
from .pipeline import reindex_store
from .query.index import PostingsIndex
from .store import Store
from .topics.engine import TopicEngine

DB_FILENAME = "newsflow.db"


class Hub:
    def __init__(self, store: Store, index: PostingsIndex, fetcher, clock: Clock):
        self.store = store
        self.index = index
        self.fetcher = fetcher
        self.clock = clock

    @classmethod
    def open(
        cls,
        data_dir: str | Path,
        fetch_mode: str = "fixture",
        corpus_dir: str | Path | None = None,
        clock: Clock | None = None,
        politeness_delay: float = 1.0,
    ) -> "Hub":
        """Open (creating if needed) the data directory and rebuild the index."""
        clock = clock or SystemClock()
        data_path = Path(data_dir)
        data_path.mkdir(parents=True, exist_ok=True)
        store = Store(data_path / DB_FILENAME, clock)
        index = PostingsIndex()
        reindex_store(store, index)
        if fetch_mode == "live":
            fetcher = LiveFetcher(politeness_delay=politeness_delay, clock=clock)
        else:
            fetcher = FixtureFetcher(corpus_dir or data_path / "corpus", clock)
        return cls(store, index, fetcher, clock)

    def crawler(self, workers: int = 1) -> Crawler:
        return Crawler(self.store, self.index, self.fetcher, self.clock, workers=workers)

    def topic_engine(self, fetch_budget: int | None = None, workers: int = 1) -> TopicEngine:
        kwargs: dict = {"workers": workers}
        if fetch_budget is not None:
            kwargs["fetch_budget"] = fetch_budget
        return TopicEngine(self.store, self.index, self.fetcher, self.clock, **kwargs)
