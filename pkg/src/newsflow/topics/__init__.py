"""Topic engine: seed query, link spidering, influence metrics, exports."""

from .dates import guess_date
from .engine import TopicEngine
from .export import export_topic
from .metrics import FixtureShareProvider, inlink_counts, share_counts
from .posts import ingest_platform_posts
from .timespans import build_timespans

__all__ = [
    "TopicEngine", "guess_date", "export_topic", "inlink_counts",
    "share_counts", "FixtureShareProvider", "ingest_platform_posts",
    "build_timespans",
]
