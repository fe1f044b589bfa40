"""Rule-based sentence splitting with per-language abbreviation exceptions."""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

TERMINATORS = ".!?…"
OPENERS = "\"'“”‘’«¿¡(["

_TERM_RUN_RE = re.compile(r"[.!?…]+")
_WORD_BEFORE_RE = re.compile(r"([^\W\d_]+)$")


@lru_cache(maxsize=None)
def abbreviations(language: str) -> frozenset[str]:
    """Lowercased abbreviation tokens for `language`; empty set when unlisted."""
    try:
        text = (
            resources.files("newsflow.textproc")
            .joinpath(f"data/abbrev/{language}.txt")
            .read_text(encoding="utf-8")
        )
    except (FileNotFoundError, ModuleNotFoundError):
        return frozenset()
    return frozenset(
        line.strip().lower() for line in text.splitlines() if line.strip() and not line.startswith("#")
    )


def split_sentences(text: str, language: str = "en") -> list[str]:
    """Split text into sentences; join(result) equals text modulo whitespace."""
    if not text or not text.strip():
        return []
    abbrevs = abbreviations(language)
    sentences: list[str] = []
    for line in text.split("\n"):
        if line.strip():
            sentences.extend(_split_line(line, abbrevs))
    return sentences


def _split_line(line: str, abbrevs: frozenset[str]) -> list[str]:
    out: list[str] = []
    start = 0
    for m in _TERM_RUN_RE.finditer(line):
        end = m.end()
        if end >= len(line):
            break
        if not _boundary_after(line, end):
            continue
        if m.group() == "." and _is_abbreviation(line, m.start(), abbrevs):
            continue
        piece = line[start:end].strip()
        if piece:
            out.append(piece)
        start = end
    tail = line[start:].strip()
    if tail:
        out.append(tail)
    return out


def _boundary_after(line: str, pos: int) -> bool:
    """True when the terminator is followed by whitespace and an uppercase/quote start."""
    if not line[pos].isspace():
        return False
    i = pos
    while i < len(line) and line[i].isspace():
        i += 1
    if i >= len(line):
        return False
    ch = line[i]
    return ch in OPENERS or ch.isupper()


def _is_abbreviation(line: str, dot_pos: int, abbrevs: frozenset[str]) -> bool:
    m = _WORD_BEFORE_RE.search(line[:dot_pos])
    if not m:
        return False
    word = m.group(1)
    # Single uppercase letters are initials ("J. K. Rowling"), not sentence ends.
    if len(word) == 1 and word.isupper():
        return True
    return word.lower() in abbrevs
