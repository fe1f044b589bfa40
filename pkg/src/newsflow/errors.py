"""Exception types shared across the package."""


class NewsflowError(Exception):
    """Base class for all package errors."""


class MalformedUrlError(NewsflowError):
    """A URL could not be normalized; `component` names the offending part."""

    def __init__(self, url: str, component: str):
        super().__init__(f"malformed url {url!r}: bad {component}")
        self.url = url
        self.component = component


class RejectedItemError(NewsflowError):
    """A feed item carried none of url, guid, or title."""


class UnknownTargetError(NewsflowError):
    """A store operation referenced an id that does not exist."""


class FeedParseError(NewsflowError):
    """Feed body is not well-formed XML or not a recognized dialect."""


class QueryParseError(NewsflowError):
    """Query string rejected; `pos` is the character offset of the problem."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.message = message
        self.pos = pos


class TopicError(NewsflowError):
    """Topic creation or spidering failed."""


class CsvFormatError(NewsflowError):
    """A CSV input is missing its required header or is otherwise unusable."""


class ShareProviderError(NewsflowError):
    """The share-count provider failed for a URL (distinct from a missing URL)."""
