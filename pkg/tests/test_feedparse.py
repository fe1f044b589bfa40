from datetime import datetime

import pytest

from newsflow.errors import FeedParseError
from newsflow.ingest import parse_feed


class TestRss2:
    def test_minimal_item(self):
        items = parse_feed(b"<rss><channel><item><link>u</link><title>t</title></item></channel></rss>")
        assert len(items) == 1
        assert items[0].url == "u"
        assert items[0].title == "t"
        assert items[0].pub_date is None

    def test_empty_channel(self):
        assert parse_feed(b"<rss><channel/></rss>") == []

    def test_full_item_fields(self):
        body = b"""<rss version="2.0"><channel><item>
        <link>http://e.test/a</link><guid>guid-1</guid><title>Title</title>
        <pubDate>Tue, 02 Jun 2020 10:30:00 GMT</pubDate>
        <description>Desc</description></item></channel></rss>"""
        item = parse_feed(body)[0]
        assert item.guid == "guid-1"
        assert item.pub_date == datetime(2020, 6, 2, 10, 30)
        assert item.description == "Desc"

    def test_document_order(self):
        body = b"""<rss><channel>
        <item><link>first</link></item><item><link>second</link></item>
        </channel></rss>"""
        assert [i.url for i in parse_feed(body)] == ["first", "second"]

    def test_item_without_url_or_guid_dropped(self):
        body = b"<rss><channel><item><title>only title</title></item></channel></rss>"
        assert parse_feed(body) == []


class TestAtom:
    def test_entry(self):
        body = b"""<feed xmlns="http://www.w3.org/2005/Atom">
        <entry><link href="http://e.test/a" rel="alternate"/><id>id-1</id>
        <title>T</title><published>2020-06-02T10:00:00Z</published>
        <summary>S</summary></entry></feed>"""
        item = parse_feed(body)[0]
        assert item.url == "http://e.test/a"
        assert item.guid == "id-1"
        assert item.pub_date == datetime(2020, 6, 2, 10, 0)

    def test_published_wins_over_updated(self):
        body = b"""<feed xmlns="http://www.w3.org/2005/Atom">
        <entry><link href="u"/><published>2020-06-01T00:00:00Z</published>
        <updated>2020-06-09T00:00:00Z</updated></entry></feed>"""
        assert parse_feed(body)[0].pub_date == datetime(2020, 6, 1)

    def test_updated_used_when_no_published(self):
        body = b"""<feed xmlns="http://www.w3.org/2005/Atom">
        <entry><link href="u"/><updated>2020-06-09T08:00:00Z</updated></entry></feed>"""
        assert parse_feed(body)[0].pub_date == datetime(2020, 6, 9, 8)


class TestRdf:
    def test_rss1_item(self):
        body = b"""<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
            xmlns="http://purl.org/rss/1.0/" xmlns:dc="http://purl.org/dc/elements/1.1/">
        <channel rdf:about="http://e.test/"><title>Feed</title></channel>
        <item rdf:about="http://e.test/a"><title>T</title><link>http://e.test/a</link>
        <dc:date>2020-06-02T10:00:00Z</dc:date></item></rdf:RDF>"""
        item = parse_feed(body)[0]
        assert item.url == "http://e.test/a"
        assert item.pub_date == datetime(2020, 6, 2, 10)


class TestErrors:
    def test_not_xml(self):
        with pytest.raises(FeedParseError, match="not well-formed"):
            parse_feed(b"<html><body>nope")

    def test_unrecognized_dialect_names_root(self):
        with pytest.raises(FeedParseError, match="html"):
            parse_feed(b"<html></html>")

    def test_bad_dates_become_none(self):
        body = b"<rss><channel><item><link>u</link><pubDate>not a date</pubDate></item></channel></rss>"
        assert parse_feed(body)[0].pub_date is None
