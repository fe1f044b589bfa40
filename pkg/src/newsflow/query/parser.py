"""Recursive-descent parser for the boolean query language.

Grammar:
    expr  := or
    or    := and (OR and)*
    and   := unary ((AND)? unary)*      -- adjacency defaults to AND
    unary := NOT unary | '(' expr ')' | phrase | field | term

Operators are case-insensitive. Quoted strings become phrases, an optional
~N suffix sets the proximity window. A trailing * turns a term into a
prefix. name:value filters are checked against the known field set; id
fields must be numeric, date fields accept "YYYY-MM-DD" with an optional
"HH:MM:SS" (quoted, or unquoted as the following token).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import QueryParseError
from .ast import (
    And,
    DATE_FIELDS,
    FIELD_NAMES,
    Field,
    ID_FIELDS,
    Not,
    Or,
    Phrase,
    Prefix,
    QueryNode,
    Term,
)

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_DATETIME_RE = re.compile(r"^\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2}$")
_TIME_RE = re.compile(r"^\d{2}:\d{2}:\d{2}$")


@dataclass
class _Token:
    kind: str  # lparen | rparen | quoted | word | eof
    text: str
    pos: int
    proximity: int | None = None


def _lex(q: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(q)
    while i < n:
        ch = q[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("lparen", "(", i))
            i += 1
        elif ch == ")":
            tokens.append(_Token("rparen", ")", i))
            i += 1
        elif ch == '"':
            end = q.find('"', i + 1)
            if end < 0:
                raise QueryParseError("unterminated quote", i)
            tok = _Token("quoted", q[i + 1 : end], i)
            i = end + 1
            if i < n and q[i] == "~":
                m = re.match(r"~(\d+)", q[i:])
                if not m:
                    raise QueryParseError("proximity suffix ~ needs a number", i)
                tok.proximity = int(m.group(1))
                i += m.end()
            tokens.append(tok)
        else:
            m = re.match(r'[^\s()"]+', q[i:])
            tokens.append(_Token("word", m.group(), i))
            i += m.end()
    tokens.append(_Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, q: str):
        self.q = q
        self.toks = _lex(q)
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def next(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def _is_keyword(self, word: str) -> str | None:
        lowered = word.lower()
        return lowered if lowered in ("and", "or", "not") else None

    def parse(self) -> QueryNode:
        node = self.parse_or()
        tok = self.peek()
        if tok.kind != "eof":
            raise QueryParseError(f"unexpected {tok.text!r}", tok.pos)
        if isinstance(node, Not):
            raise QueryParseError("query cannot be pure negation", 0)
        return node

    def parse_or(self) -> QueryNode:
        children = [self.parse_and()]
        while self.peek().kind == "word" and self._is_keyword(self.peek().text) == "or":
            self.next()
            children.append(self.parse_and())
        return children[0] if len(children) == 1 else Or(tuple(children))

    def parse_and(self) -> QueryNode:
        children = [self.parse_unary()]
        while True:
            tok = self.peek()
            if tok.kind in ("rparen", "eof"):
                break
            if tok.kind == "word":
                kw = self._is_keyword(tok.text)
                if kw == "or":
                    break
                if kw == "and":
                    self.next()
            children.append(self.parse_unary())
        return children[0] if len(children) == 1 else And(tuple(children))

    def parse_unary(self) -> QueryNode:
        tok = self.peek()
        if tok.kind == "word" and self._is_keyword(tok.text) == "not":
            self.next()
            return Not(self.parse_unary())
        if tok.kind == "lparen":
            self.next()
            node = self.parse_or()
            closing = self.peek()
            if closing.kind != "rparen":
                raise QueryParseError("unbalanced parentheses", tok.pos)
            self.next()
            return node
        if tok.kind == "quoted":
            self.next()
            return self._phrase(tok)
        if tok.kind == "word":
            self.next()
            return self._word(tok)
        if tok.kind == "rparen":
            raise QueryParseError("unbalanced parentheses", tok.pos)
        raise QueryParseError("expected a term", tok.pos)

    def _phrase(self, tok: _Token) -> Phrase:
        tokens = tuple(t.lower() for t in tok.text.split())
        if not tokens:
            raise QueryParseError("empty phrase", tok.pos)
        return Phrase(tokens, tok.proximity)

    def _word(self, tok: _Token) -> QueryNode:
        word = tok.text
        if ":" in word:
            name, _, value = word.partition(":")
            return self._field(name, value, tok)
        if word.endswith("*") and len(word) > 1 and "*" not in word[:-1]:
            return Prefix(word[:-1].lower())
        if "*" in word:
            raise QueryParseError("wildcard * only allowed at the end of a term", tok.pos)
        return Term(word.lower())

    def _field(self, name: str, value: str, tok: _Token) -> Field:
        if name not in FIELD_NAMES:
            raise QueryParseError(f"unknown field {name!r}", tok.pos)
        if not value:
            nxt = self.peek()
            if nxt.kind == "quoted":
                self.next()
                value = nxt.text
            else:
                raise QueryParseError(f"field {name} needs a value", tok.pos)
        if name in ID_FIELDS:
            if not value.isdigit():
                raise QueryParseError(f"field {name} needs a numeric id", tok.pos)
            return Field(name, value)
        if name in DATE_FIELDS:
            # Unquoted "YYYY-MM-DD HH:MM:SS" arrives as two tokens; merge them.
            nxt = self.peek()
            if _DATE_RE.match(value) and nxt.kind == "word" and _TIME_RE.match(nxt.text):
                value = f"{value} {nxt.text}"
                self.next()
            if not (_DATE_RE.match(value) or _DATETIME_RE.match(value)):
                raise QueryParseError(
                    f"field {name} needs YYYY-MM-DD or YYYY-MM-DD HH:MM:SS", tok.pos
                )
            return Field(name, value)
        if name == "language":
            lowered = value.lower()
            if not (lowered == "und" or (len(lowered) == 2 and lowered.isalpha())):
                raise QueryParseError("language needs a two-letter ISO-639-1 code", tok.pos)
            return Field(name, lowered)
        return Field(name, value)


def parse_query(q: str) -> QueryNode:
    """Parse a query string; raises QueryParseError with a character position."""
    stripped = q.strip() if q else ""
    if not stripped:
        raise QueryParseError("empty query", 0)
    return _Parser(q).parse()
