"""Canonical text form for graph nodes and matching.

A term is a lowercase phrase with single internal spaces and no surrounding
punctuation. Everything that enters the graph or an evaluation goes through
:func:`normalize` first, so string equality on terms is meaningful.
"""

from __future__ import annotations

DETERMINERS = ("a", "an", "the")


def _strip_outer_punctuation(text: str) -> str:
    start = 0
    end = len(text)
    while start < end and not text[start].isalnum():
        start += 1
    while end > start and not text[end - 1].isalnum():
        end -= 1
    return text[start:end]


def normalize(raw: str, *, strip_determiners: bool = False) -> str:
    """Normalize a raw phrase; returns "" when nothing survives.

    Rules: lowercase, collapse whitespace runs to single spaces, strip
    non-alphanumeric characters from both ends, and (optionally) drop leading
    determiner tokens ("a", "an", "the"). An empty result is the signal for a
    degenerate phrase; callers decide whether to skip or raise.
    """
    text = " ".join(raw.lower().split())
    while True:
        text = _strip_outer_punctuation(text)
        if not strip_determiners:
            break
        tokens = text.split(" ")
        if len(tokens) > 1 and tokens[0] in DETERMINERS:
            text = " ".join(tokens[1:])
            continue
        if len(tokens) == 1 and tokens[0] in DETERMINERS:
            return ""
        break
    return " ".join(text.split())


def is_normalized(text: str) -> bool:
    """True when *text* is non-empty and already in canonical form."""
    return bool(text) and text == normalize(text)
