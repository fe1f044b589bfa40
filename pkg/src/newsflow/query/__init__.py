"""Boolean query language and inverted index."""

from .ast import And, Field, Not, Or, Phrase, Prefix, QueryNode, Term, to_string
from .index import PostingsIndex, story_matches
from .parser import parse_query

__all__ = [
    "And", "Field", "Not", "Or", "Phrase", "Prefix", "QueryNode", "Term",
    "to_string", "parse_query", "PostingsIndex", "story_matches",
]
