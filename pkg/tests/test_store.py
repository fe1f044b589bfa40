from datetime import date, datetime, timedelta

import pytest

from newsflow.errors import NewsflowError, RejectedItemError, UnknownTargetError
from newsflow.models import FeedItem
from newsflow.store import FEEDS_CSV_HEADER, MEDIA_CSV_HEADER, Store


@pytest.fixture
def media_id(store):
    return store.add_media("Example Daily", "http://example.com/").media_id


class TestMedia:
    def test_name_must_be_unique(self, store):
        store.add_media("One", "http://one.test/")
        with pytest.raises(NewsflowError):
            store.add_media("One", "http://two.test/")

    def test_url_must_be_non_empty(self, store):
        with pytest.raises(NewsflowError):
            store.add_media("One", "")

    def test_unknown_id(self, store):
        with pytest.raises(UnknownTargetError):
            store.media(999999)


class TestMatchOrInsert:
    def test_identical_resubmit_matches(self, store, media_id):
        item = FeedItem(url="http://example.com/a", guid="guid-1", title="Hello",
                        pub_date=datetime(2020, 6, 1))
        sid, created = store.match_or_insert_story(item, media_id)
        assert created
        sid2, created2 = store.match_or_insert_story(item, media_id)
        assert (sid2, created2) == (sid, False)

    def test_url_match_survives_normalization_variants(self, store, media_id):
        a = FeedItem(url="http://example.com/story?utm_source=tw", title="One",
                     pub_date=datetime(2020, 6, 1))
        b = FeedItem(url="https://www.example.com/story/", title="Two",
                     pub_date=datetime(2020, 6, 5))
        sid, _ = store.match_or_insert_story(a, media_id)
        sid2, created = store.match_or_insert_story(b, media_id)
        assert (sid2, created) == (sid, False)

    def test_guid_match(self, store, media_id):
        a = FeedItem(url="http://example.com/x", guid="http://example.com/perma/1",
                     title="One", pub_date=datetime(2020, 6, 1))
        b = FeedItem(url="http://example.com/y", guid="http://example.com/perma/1",
                     title="Other", pub_date=datetime(2020, 6, 2))
        sid, _ = store.match_or_insert_story(a, media_id)
        sid2, created = store.match_or_insert_story(b, media_id)
        assert (sid2, created) == (sid, False)

    def test_non_url_guid_exact_match(self, store, media_id):
        a = FeedItem(guid="tag:blogger.com,1999:blog-1.post-2", title="One",
                     pub_date=datetime(2020, 6, 1))
        sid, _ = store.match_or_insert_story(a, media_id)
        sid2, created = store.match_or_insert_story(a, media_id)
        assert (sid2, created) == (sid, False)

    def test_title_match_within_window_same_media(self, store, media_id):
        a = FeedItem(url="http://example.com/a", title="Big Storm Hits Coast",
                     pub_date=datetime(2020, 6, 1))
        b = FeedItem(url="http://example.com/b", title="Big  storm hits coast",
                     pub_date=datetime(2020, 6, 4))
        sid, _ = store.match_or_insert_story(a, media_id)
        sid2, created = store.match_or_insert_story(b, media_id)
        assert (sid2, created) == (sid, False)

    def test_title_match_brute_force_window_scan(self, store, media_id):
        # oracle: only stories within +/-7 days may collapse
        base = datetime(2020, 6, 15)
        first, _ = store.match_or_insert_story(
            FeedItem(url="http://example.com/t0", title="Same Title", pub_date=base), media_id
        )
        for offset, expect_match in [(3, True), (7, True), (8, False)]:
            item = FeedItem(url=f"http://example.com/t{offset}", title="Same Title",
                            pub_date=base + timedelta(days=offset))
            sid, created = store.match_or_insert_story(item, media_id)
            window = abs((item.pub_date - base).days) <= 7
            assert window == expect_match
            assert created != expect_match
            if expect_match:
                assert sid == first

    def test_title_match_does_not_cross_media(self, store, media_id):
        other = store.add_media("Other Paper", "http://other.test/").media_id
        a = FeedItem(url="http://example.com/a", title="Shared Wire Copy",
                     pub_date=datetime(2020, 6, 1))
        b = FeedItem(url="http://other.test/b", title="Shared Wire Copy",
                     pub_date=datetime(2020, 6, 1))
        sid, _ = store.match_or_insert_story(a, media_id)
        sid2, created = store.match_or_insert_story(b, other)
        assert created and sid2 != sid

    def test_rejects_empty_item(self, store, media_id):
        with pytest.raises(RejectedItemError):
            store.match_or_insert_story(FeedItem(), media_id)

    def test_unknown_media(self, store):
        with pytest.raises(UnknownTargetError):
            store.match_or_insert_story(FeedItem(url="http://x.test/a", title="t"), 42)

    def test_guid_defaults_to_url(self, store, media_id):
        sid, _ = store.match_or_insert_story(
            FeedItem(url="http://example.com/a", title="T", pub_date=datetime(2020, 6, 1)),
            media_id,
        )
        assert store.story(sid).guid == "http://example.com/a"

    def test_no_two_stories_share_normalized_url(self, store, media_id):
        for i in range(20):
            store.match_or_insert_story(
                FeedItem(url=f"http://example.com/{i % 7}?utm_source={i}", title=f"t{i}",
                         pub_date=datetime(2020, 6, 1)),
                media_id,
            )
        assert store.integrity_errors() == []
        assert store.story_count() == 7


class TestTags:
    def test_upsert_idempotent(self, store):
        t1 = store.upsert_tag("collection", "us-national", label="US National")
        t2 = store.upsert_tag("collection", "us-national")
        assert t1 == t2

    def test_tag_names_scoped_by_set(self, store):
        a = store.upsert_tag("collection", "x")
        b = store.upsert_tag("geography", "x")
        assert a != b

    def test_attach_twice_is_single(self, store, media_id):
        sid, _ = store.match_or_insert_story(
            FeedItem(url="http://example.com/a", title="T", pub_date=datetime(2020, 6, 1)),
            media_id,
        )
        tag = store.upsert_tag("collection", "sample")
        store.attach_tag_to_story(sid, tag)
        store.attach_tag_to_story(sid, tag)
        assert store.story_tags(sid) == {tag}

    def test_attach_to_unknown_story(self, store):
        tag = store.upsert_tag("collection", "sample")
        with pytest.raises(UnknownTargetError):
            store.attach_tag_to_story(999999, tag)

    def test_media_tagging(self, store, media_id):
        tag = store.upsert_tag("collection", "sample")
        store.attach_tag_to_media(media_id, tag)
        assert store.media_tags(media_id) == {tag}
        assert store.media_with_tag(tag) == {media_id}


class TestSentenceDedup:
    def test_first_occurrence_wins(self, store, media_id):
        day = date(2020, 6, 1)
        kept = store.filter_new_sentences(media_id, day, ["A b.", "C d.", "A b."])
        assert kept == ["A b.", "C d."]
        again = store.filter_new_sentences(media_id, day, ["A b.", "New one."])
        assert again == ["New one."]

    def test_scoped_by_media_and_day(self, store, media_id):
        other = store.add_media("Other", "http://other.test/").media_id
        day = date(2020, 6, 1)
        store.filter_new_sentences(media_id, day, ["Shared boilerplate."])
        assert store.filter_new_sentences(other, day, ["Shared boilerplate."])
        assert store.filter_new_sentences(media_id, date(2020, 6, 2), ["Shared boilerplate."])

    def test_whitespace_collapse_identity(self, store, media_id):
        day = date(2020, 6, 1)
        store.filter_new_sentences(media_id, day, ["A  b   c."])
        assert store.filter_new_sentences(media_id, day, ["A b c."]) == []


class TestCsvRoundTrip:
    def test_media_csv(self, store, tmp_path):
        store.add_media("One", "http://one.test/", date(2020, 1, 1))
        store.add_media("Two", "http://two.test/", date(2020, 2, 2))
        path = tmp_path / "media.csv"
        store.export_media_csv(path)
        header = path.read_text().splitlines()[0]
        assert header == ",".join(MEDIA_CSV_HEADER)

        fresh = Store(tmp_path / "fresh.db")
        assert fresh.import_media_csv(path) == 2
        assert [m.name for m in fresh.list_media()] == ["One", "Two"]
        fresh.close()

    def test_feeds_csv(self, store, tmp_path):
        m = store.add_media("One", "http://one.test/")
        store.add_feed(m.media_id, "http://one.test/feed.xml")
        path = tmp_path / "feeds.csv"
        store.export_feeds_csv(path)
        assert path.read_text().splitlines()[0] == ",".join(FEEDS_CSV_HEADER)

        fresh = Store(tmp_path / "fresh2.db")
        fresh.add_media("One", "http://one.test/")
        assert fresh.import_feeds_csv(path) == 1
        assert fresh.list_feeds()[0].url == "http://one.test/feed.xml"
        fresh.close()

    def test_import_rejects_wrong_header(self, store, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("nope,nope\n1,2\n")
        with pytest.raises(NewsflowError):
            store.import_media_csv(path)
