"""Command-line interface: media/feed management, ingest, topics, serve."""

from __future__ import annotations

import sys
from datetime import datetime
from pathlib import Path

import click

from .api.config import ApiConfig
from .clock import SimClock, SystemClock
from .errors import NewsflowError
from .hub import Hub
from .timeutil import parse_date, parse_duration
from .topics.export import export_topic
from .topics.metrics import FixtureShareProvider
from .topics.posts import ingest_platform_posts


def _hub(ctx, mode: str | None = None, corpus: str | None = None) -> Hub:
    opts = ctx.obj
    clock = SimClock(datetime.fromisoformat(opts["sim_start"])) if opts["sim_start"] else SystemClock()
    return Hub.open(
        opts["data_dir"],
        fetch_mode=mode or opts["mode"],
        corpus_dir=corpus or opts["corpus"],
        clock=clock,
    )


@click.group()
@click.option("--data-dir", default="./data", show_default=True, help="Data directory.")
@click.option("--mode", type=click.Choice(["fixture", "live"]), default="fixture", show_default=True)
@click.option("--corpus", type=click.Path(), default=None, help="Fixture corpus directory.")
@click.option("--sim-start", default=None, help="Run against a simulated clock starting at this ISO timestamp.")
@click.pass_context
def main(ctx, data_dir, mode, corpus, sim_start):
    """Desk-scale news platform: feed ingest, search, topic spidering."""
    ctx.obj = {"data_dir": data_dir, "mode": mode, "corpus": corpus, "sim_start": sim_start}


# -- media / feeds ------------------------------------------------------------


@main.group()
def media():
    """Manage media sources."""


@media.command("add")
@click.option("--name", required=True)
@click.option("--url", required=True)
@click.option("--start-date", default=None)
@click.pass_context
def media_add(ctx, name, url, start_date):
    hub = _hub(ctx)
    m = hub.store.add_media(name, url, parse_date(start_date) if start_date else None)
    click.echo(f"media {m.media_id}: {m.name}")


@media.command("export")
@click.option("--file", "path", required=True, type=click.Path())
@click.pass_context
def media_export(ctx, path):
    _hub(ctx).store.export_media_csv(path)
    click.echo(f"wrote {path}")


@media.command("import")
@click.option("--file", "path", required=True, type=click.Path(exists=True))
@click.pass_context
def media_import(ctx, path):
    n = _hub(ctx).store.import_media_csv(path)
    click.echo(f"imported {n} media sources")


@main.group()
def feeds():
    """Manage feeds."""


@feeds.command("add")
@click.option("--media-id", required=True, type=int)
@click.option("--url", required=True)
@click.pass_context
def feeds_add(ctx, media_id, url):
    hub = _hub(ctx)
    f = hub.store.add_feed(media_id, url)
    click.echo(f"feed {f.feeds_id}: {f.url}")


@feeds.command("export")
@click.option("--file", "path", required=True, type=click.Path())
@click.pass_context
def feeds_export(ctx, path):
    _hub(ctx).store.export_feeds_csv(path)
    click.echo(f"wrote {path}")


@feeds.command("import")
@click.option("--file", "path", required=True, type=click.Path(exists=True))
@click.pass_context
def feeds_import(ctx, path):
    n = _hub(ctx).store.import_feeds_csv(path)
    click.echo(f"imported {n} feeds")


# -- ingest ------------------------------------------------------------


@main.group()
def ingest():
    """Feed discovery and crawling."""


@ingest.command("discover")
@click.option("--media-id", required=True, type=int)
@click.option("--add", "add_feeds", is_flag=True, help="Register discovered feeds.")
@click.pass_context
def ingest_discover(ctx, media_id, add_feeds):
    from .ingest.discover import discover_feeds

    hub = _hub(ctx)
    m = hub.store.media(media_id)
    found = discover_feeds(m.url, hub.fetcher)
    for url in found:
        click.echo(url)
        if add_feeds:
            hub.store.add_feed(media_id, url)
    if not found:
        click.echo("no feeds found", err=True)


@ingest.command("run")
@click.option("--until", required=True, help="Crawl horizon as a duration, e.g. 2h30m or 365d.")
@click.option("--mode", type=click.Choice(["fixture", "live"]), default=None)
@click.option("--corpus", type=click.Path(), default=None)
@click.option("--workers", default=1, show_default=True, type=int)
@click.pass_context
def ingest_run(ctx, until, mode, corpus, workers):
    hub = _hub(ctx, mode, corpus)
    horizon = hub.clock.now() + parse_duration(until)
    ticks = hub.crawler(workers=workers).run_until(horizon)
    click.echo(f"{ticks} polls, {hub.store.story_count()} stories in store")


# -- topics ------------------------------------------------------------


@main.group()
def topic():
    """Create, spider, and export topics."""


@topic.command("create")
@click.option("--name", default="")
@click.option("--query-file", required=True, type=click.Path(exists=True))
@click.option("--start", required=True)
@click.option("--end", required=True)
@click.option("--media", "media_ids", default="", help="Comma-separated media ids.")
@click.option("--collection", "collections", default="", help="Comma-separated collection tag ids.")
@click.option("--seed-url", "seed_urls", multiple=True)
@click.option("--max-rounds", default=15, show_default=True, type=int)
@click.pass_context
def topic_create(ctx, name, query_file, start, end, media_ids, collections, seed_urls, max_rounds):
    hub = _hub(ctx)
    seed_query = Path(query_file).read_text(encoding="utf-8").strip()
    t = hub.topic_engine().create_topic(
        name=name or seed_query,
        seed_query=seed_query,
        start_date=parse_date(start),
        end_date=parse_date(end),
        seed_media={int(x) for x in media_ids.split(",") if x.strip()},
        seed_collections={int(x) for x in collections.split(",") if x.strip()},
        seed_urls=list(seed_urls),
        max_rounds=max_rounds,
    )
    click.echo(f"topic {t.topics_id}: {t.name}")


@topic.command("spider")
@click.option("--id", "topics_id", required=True, type=int)
@click.option("--mode", type=click.Choice(["fixture", "live"]), default=None)
@click.option("--corpus", type=click.Path(), default=None)
@click.option("--workers", default=1, show_default=True, type=int)
@click.pass_context
def topic_spider(ctx, topics_id, mode, corpus, workers):
    hub = _hub(ctx, mode, corpus)
    members = hub.topic_engine(workers=workers).spider(topics_id)
    rounds = max((m.discovered_round for m in members), default=0)
    click.echo(f"topic {topics_id}: {len(members)} stories over {rounds} rounds")


@topic.command("seed-posts")
@click.option("--id", "topics_id", required=True, type=int)
@click.option("--csv", "csv_path", required=True, type=click.Path(exists=True))
@click.pass_context
def topic_seed_posts(ctx, topics_id, csv_path):
    hub = _hub(ctx)
    engine = hub.topic_engine()
    added, stats, edges = ingest_platform_posts(hub.store, topics_id, csv_path, engine.media_for_hostname)
    click.echo(f"added {len(added)} seed urls, {len(stats)} urls with share stats, {len(edges)} co-share edges")


@topic.command("export")
@click.option("--id", "topics_id", required=True, type=int)
@click.option("--out", required=True, type=click.Path())
@click.option("--shares-file", default=None, type=click.Path(exists=True),
              help="JSON file of url -> share count for the share provider.")
@click.pass_context
def topic_export(ctx, topics_id, out, shares_file):
    hub = _hub(ctx)
    provider = FixtureShareProvider(path=shares_file) if shares_file else None
    files = export_topic(hub.store, topics_id, out, share_provider=provider)
    for path in files:
        click.echo(str(path))


# -- serve ------------------------------------------------------------


@main.command()
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--host", default=None)
@click.option("--port", default=None, type=int)
@click.pass_context
def serve(ctx, config_path, host, port):
    """Run the REST API (and the Explorer, when built)."""
    import uvicorn

    from .api.app import create_app

    config = ApiConfig.load(config_path)
    if ctx.obj["data_dir"] != "./data" or config_path is None:
        config.data_dir = ctx.obj["data_dir"]
    if ctx.obj["corpus"]:
        config.corpus_dir = ctx.obj["corpus"]
        config.fetch_mode = ctx.obj["mode"]
    if host:
        config.listen_addr = host
    if port:
        config.port = port
    if not config.static_dir:
        bundled = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
        if bundled.is_dir():
            config.static_dir = str(bundled)
    hub = Hub.open(
        config.data_dir,
        fetch_mode=config.fetch_mode,
        corpus_dir=config.corpus_dir,
        politeness_delay=config.politeness_delay,
    )
    uvicorn.run(create_app(hub, config), host=config.listen_addr, port=config.port)


def entry() -> None:
    try:
        main(obj={})
    except NewsflowError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    entry()
