"""Date-sliced views of a topic: overall, weekly, and monthly timespans."""

from __future__ import annotations

from datetime import date

from ..models import Timespan
from ..query.index import PostingsIndex
from ..store import Store
from ..timeutil import months_overlapping, weeks_overlapping


def build_timespans(store: Store, index: PostingsIndex, topics_id: int) -> list[Timespan]:
    """One overall span plus every Sunday-Saturday week and calendar month
    overlapping the topic range.

    A story belongs to a span when its publish date falls inside it, or when
    it is the target of a story link whose source published inside it.
    """
    topic = store.topic(topics_id)
    members = store.topic_story_ids(topics_id)
    published = {sid: store.story(sid).publish_date.date() for sid in members}
    links = store.topic_links(topics_id)

    spans: list[tuple[str, date, date]] = [("overall", topic.start_date, topic.end_date)]
    spans += [("weekly", s, e) for s, e in weeks_overlapping(topic.start_date, topic.end_date)]
    spans += [("monthly", s, e) for s, e in months_overlapping(topic.start_date, topic.end_date)]

    out = []
    for period, start, end in spans:
        inside = {sid for sid, d in published.items() if start <= d <= end}
        linked = {
            link.ref_stories_id
            for link in links
            if start <= published[link.source_stories_id] <= end
        }
        ids = inside | linked
        span = store.save_timespan(topics_id, period, start, end, ids)
        for sid in ids:
            index.add_timespan(sid, span.timespans_id)
        out.append(span)
    return out
