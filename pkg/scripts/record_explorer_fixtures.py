#!/usr/bin/env python3
"""Record real API responses as fixtures for the Explorer's snapshot tests."""

import json
import sys
import tempfile
import time
from datetime import datetime
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tests"))

from fastapi.testclient import TestClient

from newsflow.api import create_app
from newsflow.clock import SimClock
from newsflow.hub import Hub
from newsflow.ingest import Crawler, CorpusBuilder
from conftest import article_html, rss_feed

OUT = ROOT / "frontend" / "tests" / "fixtures"


def build_client(base: Path) -> TestClient:
    clock = SimClock(datetime(2020, 6, 1))
    cb = CorpusBuilder(base / "corpus")
    items = [
        {"url": f"http://site.test/{i}", "title": f"Zebra story {i}",
         "pub_date": f"Tue, 0{(i % 6) + 2} Jun 2020 10:00:00 GMT"}
        for i in range(7)
    ]
    cb.add("http://site.test/feed.xml", rss_feed(items))
    links = {0: ["http://wild.test/z"]}
    for i in range(7):
        cb.add(f"http://site.test/{i}",
               article_html(f"Zebra story {i}", f"zebra herd report number {i} from the plains",
                            links.get(i, ())))
    cb.add("http://wild.test/z",
           article_html("Wild zebra", "zebra in the wild grasslands",
                        published="2020-06-03T09:00:00Z"))
    hub = Hub.open(base / "data", corpus_dir=base / "corpus", clock=clock)
    m = hub.store.add_media("Example Site", "http://site.test/")
    hub.store.add_feed(m.media_id, "http://site.test/feed.xml")
    Crawler(hub.store, hub.index, hub.fetcher, clock).crawl_tick()
    return TestClient(create_app(hub))


def record(client: TestClient) -> None:
    OUT.mkdir(parents=True, exist_ok=True)

    def save(name, resp):
        if name.endswith(".json"):
            (OUT / name).write_text(json.dumps(resp.json(), indent=2, sort_keys=True) + "\n")
        else:
            (OUT / name).write_bytes(resp.content)
        print(f"recorded {name} ({resp.status_code})")

    q = {"q": "zebra"}
    save("count_day.json", client.get("/api/v2/stories_public/count", params={**q, "split": "day"}))
    save("count_week.json", client.get("/api/v2/stories_public/count", params={**q, "split": "week"}))
    save("count_day.csv", client.get("/api/v2/stories_public/count",
                                     params={**q, "split": "day", "format": "csv"}))
    save("wc.json", client.get("/api/v2/wc/list", params={**q, "num_words": 10}))
    save("wc.csv", client.get("/api/v2/wc/list", params={**q, "num_words": 10, "format": "csv"}))
    save("stories.json", client.get("/api/v2/stories_public/list", params={**q, "rows": 5}))
    save("stories.csv", client.get("/api/v2/stories_public/list",
                                   params={**q, "rows": 5, "format": "csv"}))
    save("parse_error.json", client.get("/api/v2/stories_public/list", params={"q": "zebra AND ("}))

    created = client.post("/api/v2/topics", json={
        "name": "zebra topic", "seed_query": "zebra",
        "start_date": "2020-06-01", "end_date": "2020-06-30",
    })
    save("topic_created.json", created)
    topics_id = created.json()["topics_id"]
    save("spider_started.json", client.post(f"/api/v2/topics/{topics_id}/spider"))
    for _ in range(200):
        status = client.get(f"/api/v2/topics/{topics_id}")
        if status.json()["spider"]["state"] in ("done", "error"):
            break
        time.sleep(0.05)
    save("topic_done.json", status)


if __name__ == "__main__":
    with tempfile.TemporaryDirectory() as tmp:
        record(build_client(Path(tmp)))
