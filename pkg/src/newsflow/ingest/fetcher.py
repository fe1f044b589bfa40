"""URL fetching: hermetic fixture corpora and a polite live fetcher.

Fixture corpus layout: a directory with a manifest file, one entry per line
`normalized_url<TAB>status<TAB>relative_path`, plus the body files.
"""

from __future__ import annotations

import hashlib
import logging
import threading
import time
import urllib.error
import urllib.request
from pathlib import Path
from urllib.parse import urlsplit, urljoin
from urllib.robotparser import RobotFileParser

from ..clock import Clock, SystemClock
from ..models import FetchRecord
from ..store import story_key

log = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.tsv"
DEFAULT_TIMEOUT = 30.0
MAX_REDIRECTS = 5
USER_AGENT = "newsflow-crawler/0.1"


class FixtureFetcher:
    """Serves bodies from a corpus manifest; lookups are by normalized URL."""

    def __init__(self, corpus_dir: str | Path, clock: Clock | None = None):
        self.corpus_dir = Path(corpus_dir)
        self.clock = clock or SystemClock()
        self._entries: dict[str, tuple[int, Path]] = {}
        manifest = self.corpus_dir / MANIFEST_NAME
        if manifest.exists():
            for line in manifest.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                key, status, relpath = line.split("\t")
                self._entries[key] = (int(status), self.corpus_dir / relpath)

    def fetch(self, url: str) -> FetchRecord:
        key = story_key(url)
        entry = self._entries.get(key)
        if entry is None:
            return FetchRecord(url, 404, b"", self.clock.now(), note="fixture miss")
        status, path = entry
        body = path.read_bytes() if status == 200 or path.exists() else b""
        return FetchRecord(url, status, body, self.clock.now())


class CorpusBuilder:
    """Writes fixture corpora (used by tests and the demo-corpus script)."""

    def __init__(self, corpus_dir: str | Path):
        self.corpus_dir = Path(corpus_dir)
        (self.corpus_dir / "pages").mkdir(parents=True, exist_ok=True)
        self._lines: list[str] = []
        self._keys: set[str] = set()

    def add(self, url: str, body: bytes | str, status: int = 200) -> None:
        key = story_key(url)
        if key in self._keys:
            raise ValueError(f"corpus already has {key!r}")
        self._keys.add(key)
        data = body.encode("utf-8") if isinstance(body, str) else body
        name = hashlib.sha1(key.encode("utf-8")).hexdigest()[:16]
        rel = f"pages/{name}"
        (self.corpus_dir / rel).write_bytes(data)
        self._lines.append(f"{key}\t{status}\t{rel}")
        (self.corpus_dir / MANIFEST_NAME).write_text(
            "\n".join(self._lines) + "\n", encoding="utf-8"
        )

    def fetcher(self, clock: Clock | None = None) -> FixtureFetcher:
        return FixtureFetcher(self.corpus_dir, clock)


class LiveFetcher:
    """Fetches from the open web: honors robots exclusion, keeps >=1s per-host
    spacing, follows at most 5 redirects, times out after 30s."""

    def __init__(
        self,
        politeness_delay: float = 1.0,
        timeout: float = DEFAULT_TIMEOUT,
        max_redirects: int = MAX_REDIRECTS,
        clock: Clock | None = None,
        opener=None,
        sleep=None,
    ):
        self.politeness_delay = politeness_delay
        self.timeout = timeout
        self.max_redirects = max_redirects
        self.clock = clock or SystemClock()
        self._opener = opener or self._urllib_open
        self._sleep = sleep or time.sleep
        self._last_fetch: dict[str, float] = {}
        self._robots: dict[str, RobotFileParser | None] = {}
        self._lock = threading.Lock()

    def fetch(self, url: str) -> FetchRecord:
        host = urlsplit(url).netloc
        if not host:
            return FetchRecord(url, 0, b"", self.clock.now(), note="no host")
        if not self._robots_allow(url, host):
            return FetchRecord(url, 0, b"", self.clock.now(), note="robots")
        current = url
        for _ in range(self.max_redirects + 1):
            self._wait_turn(urlsplit(current).netloc)
            status, body, location = self._open(current)
            if status in (301, 302, 303, 307, 308) and location:
                current = urljoin(current, location)
                continue
            return FetchRecord(url, status, body, self.clock.now())
        return FetchRecord(url, 0, b"", self.clock.now(), note="too many redirects")

    def _robots_allow(self, url: str, host: str) -> bool:
        with self._lock:
            parser = self._robots.get(host, "unset")
        if parser == "unset":
            robots_url = f"{urlsplit(url).scheme or 'http'}://{host}/robots.txt"
            status, body, _ = self._open(robots_url)
            parser = None
            if status == 200:
                parser = RobotFileParser()
                parser.parse(body.decode("utf-8", "replace").splitlines())
            with self._lock:
                self._robots[host] = parser
        return parser is None or parser.can_fetch(USER_AGENT, url)

    def _wait_turn(self, host: str) -> None:
        with self._lock:
            last = self._last_fetch.get(host)
            now = time.monotonic()
            wait = 0.0 if last is None else max(0.0, self.politeness_delay - (now - last))
            self._last_fetch[host] = now + wait
        if wait > 0:
            self._sleep(wait)

    def _open(self, url: str) -> tuple[int, bytes, str | None]:
        try:
            return self._opener(url, self.timeout)
        except Exception as exc:
            log.debug("fetch failed for %s: %s", url, exc)
            return 0, b"", None

    @staticmethod
    def _urllib_open(url: str, timeout: float) -> tuple[int, bytes, str | None]:
        request = urllib.request.Request(url, headers={"User-Agent": USER_AGENT})
        opener = urllib.request.build_opener(_NoRedirect)
        try:
            with opener.open(request, timeout=timeout) as resp:
                return resp.status, resp.read(), None
        except urllib.error.HTTPError as err:
            body = err.read() if err.fp else b""
            return err.code, body, err.headers.get("Location")
        except urllib.error.URLError:
            return 0, b"", None


class _NoRedirect(urllib.request.HTTPRedirectHandler):
    def redirect_request(self, req, fp, code, msg, headers, newurl):
        return None
