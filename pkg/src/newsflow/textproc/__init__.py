"""Story text processing: extraction, sentence splitting, dedup, language."""

from .dedup import dedup_sentences
from .extract import extract_text
from .langid import detect_language
from .sentences import split_sentences

__all__ = ["extract_text", "split_sentences", "dedup_sentences", "detect_language"]
