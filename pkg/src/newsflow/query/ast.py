"""Query AST nodes and the canonical printer.

parse_query(to_string(ast)) reproduces an identical AST; composites always
print parenthesized so nesting survives the round trip.
"""

from __future__ import annotations

from dataclasses import dataclass

FIELD_NAMES = (
    "story_id", "media_id", "publish_date", "publish_day", "publish_week",
    "publish_month", "publish_year", "tags_id_stories", "tags_id_media",
    "timespans_id", "language",
)
ID_FIELDS = ("story_id", "media_id", "tags_id_stories", "tags_id_media", "timespans_id")
DATE_FIELDS = ("publish_date", "publish_day", "publish_week", "publish_month", "publish_year")


@dataclass(frozen=True)
class Term:
    text: str


@dataclass(frozen=True)
class Prefix:
    stem: str


@dataclass(frozen=True)
class Phrase:
    tokens: tuple[str, ...]
    proximity: int | None = None


@dataclass(frozen=True)
class And:
    children: tuple["QueryNode", ...]


@dataclass(frozen=True)
class Or:
    children: tuple["QueryNode", ...]


@dataclass(frozen=True)
class Not:
    child: "QueryNode"


@dataclass(frozen=True)
class Field:
    name: str
    value: str


QueryNode = Term | Prefix | Phrase | And | Or | Not | Field


def to_string(node: QueryNode) -> str:
    if isinstance(node, Term):
        return node.text
    if isinstance(node, Prefix):
        return node.stem + "*"
    if isinstance(node, Phrase):
        out = '"' + " ".join(node.tokens) + '"'
        if node.proximity is not None:
            out += f"~{node.proximity}"
        return out
    if isinstance(node, Field):
        value = f'"{node.value}"' if " " in node.value else node.value
        return f"{node.name}:{value}"
    if isinstance(node, Not):
        return "NOT " + to_string(node.child)
    if isinstance(node, And):
        return "(" + " AND ".join(to_string(c) for c in node.children) + ")"
    if isinstance(node, Or):
        return "(" + " OR ".join(to_string(c) for c in node.children) + ")"
    raise TypeError(f"not a query node: {node!r}")


def leaves(node: QueryNode) -> list[QueryNode]:
    """All Term/Prefix/Phrase/Field leaves in document order."""
    if isinstance(node, (And, Or)):
        out = []
        for c in node.children:
            out.extend(leaves(c))
        return out
    if isinstance(node, Not):
        return leaves(node.child)
    return [node]
