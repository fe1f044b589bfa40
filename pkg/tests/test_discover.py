from newsflow.ingest import CorpusBuilder, discover_feeds
from conftest import rss_feed

VALID_FEED = rss_feed([{"url": "http://site.test/a", "title": "A"}])


def test_link_rel_alternate_discovered(tmp_path, clock):
    cb = CorpusBuilder(tmp_path)
    cb.add("http://site.test/", '<html><head><link rel="alternate" href="/feed.xml"></head></html>')
    cb.add("http://site.test/feed.xml", VALID_FEED)
    assert discover_feeds("http://site.test/", cb.fetcher(clock)) == ["http://site.test/feed.xml"]


def test_candidate_that_is_html_excluded(tmp_path, clock):
    cb = CorpusBuilder(tmp_path)
    cb.add("http://site.test/", '<a href="/feed.xml">subscribe</a>')
    cb.add("http://site.test/feed.xml", "<html><body>not a feed</body></html>")
    assert discover_feeds("http://site.test/", cb.fetcher(clock)) == []


def test_feed_with_zero_items_excluded(tmp_path, clock):
    cb = CorpusBuilder(tmp_path)
    cb.add("http://site.test/", '<a href="/rss">rss</a>')
    cb.add("http://site.test/rss", "<rss><channel/></rss>")
    assert discover_feeds("http://site.test/", cb.fetcher(clock)) == []


def test_feed_on_second_level_page_found(tmp_path, clock):
    cb = CorpusBuilder(tmp_path)
    cb.add("http://site.test/", '<a href="/about">about us</a>')
    cb.add("http://site.test/about", '<a href="/updates.atom">atom updates</a>')
    cb.add(
        "http://site.test/updates.atom",
        '<feed xmlns="http://www.w3.org/2005/Atom"><entry><link href="u"/></entry></feed>',
    )
    assert discover_feeds("http://site.test/", cb.fetcher(clock)) == ["http://site.test/updates.atom"]


def test_depth_three_feed_not_found(tmp_path, clock):
    cb = CorpusBuilder(tmp_path)
    cb.add("http://site.test/", '<a href="/level2">news</a>')
    cb.add("http://site.test/level2", '<a href="/level3">more news</a>')
    cb.add("http://site.test/level3", '<a href="/feed.xml">rss</a>')
    cb.add("http://site.test/feed.xml", VALID_FEED)
    assert discover_feeds("http://site.test/", cb.fetcher(clock)) == []


def test_offsite_pages_not_crawled(tmp_path, clock):
    cb = CorpusBuilder(tmp_path)
    cb.add("http://site.test/", '<a href="http://other.test/page">elsewhere</a>')
    cb.add("http://other.test/page", '<a href="http://other.test/feed.xml">rss</a>')
    cb.add("http://other.test/feed.xml", VALID_FEED)
    assert discover_feeds("http://site.test/", cb.fetcher(clock)) == []


def test_anchor_text_matches_pattern(tmp_path, clock):
    cb = CorpusBuilder(tmp_path)
    cb.add("http://site.test/", '<a href="/syndication">RSS feed here</a>')
    cb.add("http://site.test/syndication", VALID_FEED)
    assert discover_feeds("http://site.test/", cb.fetcher(clock)) == ["http://site.test/syndication"]


def test_unfetchable_home_is_empty(tmp_path, clock):
    cb = CorpusBuilder(tmp_path)
    assert discover_feeds("http://site.test/", cb.fetcher(clock)) == []


def test_results_deduplicated_and_sorted(tmp_path, clock):
    cb = CorpusBuilder(tmp_path)
    cb.add(
        "http://site.test/",
        '<a href="/b-feed.xml">two</a><a href="/a-feed.xml">one</a><a href="/a-feed.xml">one again</a>',
    )
    cb.add("http://site.test/a-feed.xml", VALID_FEED)
    cb.add("http://site.test/b-feed.xml", rss_feed([{"url": "http://site.test/b", "title": "B"}]))
    assert discover_feeds("http://site.test/", cb.fetcher(clock)) == [
        "http://site.test/a-feed.xml",
        "http://site.test/b-feed.xml",
    ]
