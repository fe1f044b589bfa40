"""REST endpoints over the store, index, and topic engine.

Every list endpoint also serves `format=csv` with the same rows. Story
responses carry metadata only; full text is never serialized.
"""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import tempfile
import threading
import zipfile
from datetime import date
from pathlib import Path

from fastapi import Depends, FastAPI, HTTPException, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..errors import QueryParseError, TopicError, UnknownTargetError
from ..hub import Hub
from ..models import Story
from ..query import parse_query
from ..timeutil import fmt_dt
from ..topics.export import export_topic
from ..topics.metrics import inlink_counts
from .config import ApiConfig

log = logging.getLogger(__name__)

MAX_ROWS = 1000
DEFAULT_ROWS = 20


class TopicCreateBody(BaseModel):
    name: str = ""
    seed_query: str
    start_date: date
    end_date: date
    media_ids: list[int] = []
    collection_tag_ids: list[int] = []
    seed_urls: list[str] = []
    max_rounds: int = 15


class _SpiderRuns:
    """Per-topic spider state; one run at a time per topic."""

    def __init__(self):
        self._lock = threading.Lock()
        self._state: dict[int, dict] = {}

    def status(self, topics_id: int) -> dict:
        with self._lock:
            return dict(self._state.get(topics_id, {"state": "idle"}))

    def try_start(self, topics_id: int) -> bool:
        with self._lock:
            if self._state.get(topics_id, {}).get("state") == "running":
                return False
            self._state[topics_id] = {"state": "running"}
            return True

    def finish(self, topics_id: int, error: str | None = None) -> None:
        with self._lock:
            if error is None:
                self._state[topics_id] = {"state": "done"}
            else:
                self._state[topics_id] = {"state": "error", "error": error}


def create_app(hub: Hub, config: ApiConfig | None = None) -> FastAPI:
    config = config or ApiConfig()
    app = FastAPI(title="newsflow", version="0.1.0", docs_url="/api/docs")
    runs = _SpiderRuns()

    def check_key(request: Request) -> None:
        if not config.api_keys:
            return
        key = request.query_params.get("key") or request.headers.get("X-API-Key")
        if key not in config.api_keys:
            raise HTTPException(status_code=401, detail="bad or missing api key")

    def parse_or_400(q: str):
        try:
            return parse_query(q)
        except QueryParseError as exc:
            raise HTTPException(
                status_code=400,
                detail={"error": exc.message, "position": exc.pos},
            ) from exc

    def tabular(request: Request, header: list[str], rows: list[list], json_items: list[dict], name: str):
        """JSON by default; the same rows as CSV when format=csv."""
        if request.query_params.get("format") == "csv":
            buf = io.StringIO()
            w = csv.writer(buf)
            w.writerow(header)
            w.writerows(rows)
            return Response(
                content=buf.getvalue(),
                media_type="text/csv; charset=utf-8",
                headers={"Content-Disposition": f'attachment; filename="{name}.csv"'},
            )
        return JSONResponse(json_items)

    def qhash(q: str) -> str:
        return hashlib.sha1(q.encode("utf-8")).hexdigest()[:8]

    def story_dict(story: Story) -> dict:
        return {
            "stories_id": story.stories_id,
            "media_id": story.media_id,
            "title": story.title,
            "publish_date": fmt_dt(story.publish_date),
            "collect_date": fmt_dt(story.collect_date),
            "url": story.url,
            "guid": story.guid,
            "language": story.language,
            "tags": sorted(story.tags),
        }

    # -- search ---------------------------------------------------------------

    @app.get("/api/v2/stories_public/list", dependencies=[Depends(check_key)])
    def stories_list(
        request: Request,
        q: str,
        rows: int = DEFAULT_ROWS,
        last_processed_stories_id: int = 0,
    ):
        ast = parse_or_400(q)
        rows = max(1, min(rows, MAX_ROWS))
        matches = [
            sid for sid in hub.index.search(ast) if sid > last_processed_stories_id
        ][:rows]
        items = [story_dict(hub.store.story(sid)) for sid in matches]
        header = [
            "stories_id", "media_id", "title", "publish_date", "collect_date",
            "url", "guid", "language", "tags",
        ]
        csv_rows = [
            [i["stories_id"], i["media_id"], i["title"], i["publish_date"],
             i["collect_date"], i["url"], i["guid"], i["language"],
             ";".join(str(t) for t in i["tags"])]
            for i in items
        ]
        return tabular(request, header, csv_rows, items, f"stories-{qhash(q)}")

    @app.get("/api/v2/stories_public/count", dependencies=[Depends(check_key)])
    def stories_count(request: Request, q: str, split: str = "day"):
        ast = parse_or_400(q)
        if split not in ("day", "week", "month"):
            raise HTTPException(status_code=400, detail={"error": "split must be day, week, or month"})
        series = hub.index.attention_over_time(ast, split)
        items = [{"date": d.isoformat(), "count": n} for d, n in series]
        rows = [[i["date"], i["count"]] for i in items]
        return tabular(request, ["date", "count"], rows, items, f"attention-{qhash(q)}-{split}")

    @app.get("/api/v2/wc/list", dependencies=[Depends(check_key)])
    def wc_list(request: Request, q: str, num_words: int = 100, language: str = "en"):
        ast = parse_or_400(q)
        num_words = max(1, min(num_words, 5000))
        counts = hub.index.word_counts(ast, num_words, language)
        items = [{"term": t, "count": n} for t, n in counts]
        rows = [[i["term"], i["count"]] for i in items]
        return tabular(request, ["term", "count"], rows, items, f"words-{qhash(q)}")

    # -- listings ---------------------------------------------------------------

    @app.get("/api/v2/media/list", dependencies=[Depends(check_key)])
    def media_list(request: Request):
        items = [
            {
                "media_id": m.media_id, "name": m.name, "url": m.url,
                "start_date": m.start_date.isoformat(), "tags": sorted(m.tags),
            }
            for m in hub.store.list_media()
        ]
        rows = [
            [i["media_id"], i["name"], i["url"], i["start_date"],
             ";".join(str(t) for t in i["tags"])]
            for i in items
        ]
        return tabular(request, ["media_id", "name", "url", "start_date", "tags"], rows, items, "media")

    @app.get("/api/v2/media/single/{media_id}", dependencies=[Depends(check_key)])
    def media_single(media_id: int):
        try:
            m = hub.store.media(media_id)
        except UnknownTargetError:
            raise HTTPException(status_code=404, detail="unknown media id") from None
        return {
            "media_id": m.media_id, "name": m.name, "url": m.url,
            "start_date": m.start_date.isoformat(), "tags": sorted(m.tags),
        }

    @app.get("/api/v2/feeds/list", dependencies=[Depends(check_key)])
    def feeds_list(request: Request, media_id: int | None = None):
        feeds = hub.store.list_feeds(media_id)
        items = [
            {
                "feeds_id": f.feeds_id, "media_id": f.media_id, "url": f.url,
                "active": f.active, "type": f.type,
            }
            for f in feeds
        ]
        rows = [[i["feeds_id"], i["media_id"], i["url"],
                 "true" if i["active"] else "false", i["type"]] for i in items]
        return tabular(request, ["feeds_id", "media_id", "url", "active", "type"], rows, items, "feeds")

    @app.get("/api/v2/tags/list", dependencies=[Depends(check_key)])
    def tags_list(request: Request, tag_sets_id: int | None = None):
        tags = hub.store.list_tags(tag_sets_id)
        items = [
            {
                "tags_id": t.tags_id, "tag_sets_id": t.tag_sets_id, "tag": t.tag,
                "label": t.label, "description": t.description,
            }
            for t in tags
        ]
        rows = [[i["tags_id"], i["tag_sets_id"], i["tag"], i["label"], i["description"]] for i in items]
        return tabular(request, ["tags_id", "tag_sets_id", "tag", "label", "description"], rows, items, "tags")

    # -- topics ---------------------------------------------------------------

    def topic_or_404(topics_id: int):
        try:
            return hub.store.topic(topics_id)
        except UnknownTargetError:
            raise HTTPException(status_code=404, detail="unknown topic id") from None

    def topic_dict(topic) -> dict:
        return {
            "topics_id": topic.topics_id,
            "name": topic.name,
            "seed_query": topic.seed_query,
            "start_date": topic.start_date.isoformat(),
            "end_date": topic.end_date.isoformat(),
            "media_ids": sorted(topic.seed_media),
            "collection_tag_ids": sorted(topic.seed_collections),
            "seed_urls": list(topic.seed_urls),
            "max_rounds": topic.max_rounds,
        }

    @app.post("/api/v2/topics", dependencies=[Depends(check_key)])
    def topics_create(body: TopicCreateBody):
        engine = hub.topic_engine()
        try:
            topic = engine.create_topic(
                name=body.name or body.seed_query,
                seed_query=body.seed_query,
                start_date=body.start_date,
                end_date=body.end_date,
                seed_media=set(body.media_ids),
                seed_collections=set(body.collection_tag_ids),
                seed_urls=list(body.seed_urls),
                max_rounds=body.max_rounds,
            )
        except TopicError as exc:
            raise HTTPException(status_code=400, detail={"error": str(exc)}) from exc
        return topic_dict(topic)

    @app.get("/api/v2/topics/{topics_id}", dependencies=[Depends(check_key)])
    def topics_get(topics_id: int):
        topic = topic_or_404(topics_id)
        out = topic_dict(topic)
        out["spider"] = runs.status(topics_id)
        out["story_count"] = len(hub.store.topic_story_ids(topics_id))
        return out

    @app.post("/api/v2/topics/{topics_id}/spider", dependencies=[Depends(check_key)], status_code=202)
    def topics_spider(topics_id: int):
        topic_or_404(topics_id)
        if not runs.try_start(topics_id):
            raise HTTPException(status_code=409, detail="spider already running for this topic")

        def run():
            try:
                hub.topic_engine().spider(topics_id)
                runs.finish(topics_id)
            except Exception as exc:  # surfaced via status polling
                log.exception("spider failed for topic %s", topics_id)
                runs.finish(topics_id, error=str(exc))

        threading.Thread(target=run, name=f"spider-{topics_id}", daemon=True).start()
        return {"topics_id": topics_id, "state": "running"}

    @app.get("/api/v2/topics/{topics_id}/stories", dependencies=[Depends(check_key)])
    def topics_stories(request: Request, topics_id: int):
        topic_or_404(topics_id)
        story_inlinks, _ = inlink_counts(hub.store, topics_id)
        members = hub.store.topic_stories(topics_id)
        items = []
        for ts in members:
            story = hub.store.story(ts.stories_id)
            item = story_dict(story)
            item["discovered_round"] = ts.discovered_round
            item["via"] = ts.via
            item["media_inlink_count"] = story_inlinks.get(ts.stories_id, 0)
            items.append(item)
        header = [
            "stories_id", "media_id", "title", "publish_date", "url", "language",
            "discovered_round", "via", "media_inlink_count",
        ]
        rows = [
            [i["stories_id"], i["media_id"], i["title"], i["publish_date"], i["url"],
             i["language"], i["discovered_round"], i["via"], i["media_inlink_count"]]
            for i in items
        ]
        return tabular(request, header, rows, items, f"topic-{topics_id}-stories")

    @app.get("/api/v2/topics/{topics_id}/links", dependencies=[Depends(check_key)])
    def topics_links(request: Request, topics_id: int):
        topic_or_404(topics_id)
        links = hub.store.topic_links(topics_id)
        items = [
            {"source_stories_id": l.source_stories_id, "ref_stories_id": l.ref_stories_id}
            for l in links
        ]
        rows = [[i["source_stories_id"], i["ref_stories_id"]] for i in items]
        return tabular(request, ["source_stories_id", "ref_stories_id"], rows, items, f"topic-{topics_id}-links")

    @app.get("/api/v2/topics/{topics_id}/timespans", dependencies=[Depends(check_key)])
    def topics_timespans(request: Request, topics_id: int):
        topic_or_404(topics_id)
        spans = hub.store.timespans(topics_id)
        items = [
            {
                "timespans_id": s.timespans_id, "period": s.period,
                "start_date": s.start.isoformat(), "end_date": s.end.isoformat(),
                "story_count": len(s.story_ids),
            }
            for s in spans
        ]
        rows = [[i["timespans_id"], i["period"], i["start_date"], i["end_date"], i["story_count"]] for i in items]
        return tabular(
            request,
            ["timespans_id", "period", "start_date", "end_date", "story_count"],
            rows, items, f"topic-{topics_id}-timespans",
        )

    @app.get("/api/v2/topics/{topics_id}/download", dependencies=[Depends(check_key)])
    def topics_download(topics_id: int):
        topic_or_404(topics_id)
        with tempfile.TemporaryDirectory() as tmp:
            files = export_topic(hub.store, topics_id, tmp)
            buf = io.BytesIO()
            with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED) as zf:
                for path in files:
                    zf.write(path, arcname=path.name)
        return Response(
            content=buf.getvalue(),
            media_type="application/zip",
            headers={
                "Content-Disposition": f'attachment; filename="topic-{topics_id}-dataset.zip"'
            },
        )

    static_dir = config.static_dir
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="explorer")

    return app
