"""Sentence splitting and word tokenization with exact character offsets.

Tokens are maximal runs of letters, digits and apostrophes; everything else
(whitespace, punctuation, hyphens) is a gap. Sentences end at ``.``, ``!``
or ``?`` followed by whitespace or end of text. There is no abbreviation
list, so "Mr. Smith" starts a new sentence at "Smith".
"""
from __future__ import annotations

import bisect
import re
import string

from .model import Token

_WORD = re.compile(r"(?:[^\W_]|['’])+")
_TERMINATOR = re.compile(r"[.!?](?=\s|\Z)")
_PUNCT = string.punctuation + "‘’“”"


def normalize(surface: str) -> str:
    return surface.lower().strip(_PUNCT)


def split_sentences(raw_text: str) -> list[tuple[int, int]]:
    """Return ``(start, end)`` sentence regions covering ``raw_text``.

    Regions are contiguous; a trailing region holding only whitespace is
    dropped, so ``"A ran. "`` is one sentence.
    """
    cuts = [m.end() for m in _TERMINATOR.finditer(raw_text)]
    bounds = [0, *cuts]
    if bounds[-1] != len(raw_text):
        bounds.append(len(raw_text))
    regions = list(zip(bounds, bounds[1:]))
    if regions and not raw_text[regions[-1][0]:].strip():
        regions.pop()
    return regions


def tokenize(raw_text: str) -> list[Token]:
    regions = split_sentences(raw_text)
    region_starts = [s for s, _ in regions]
    tokens = []
    for m in _WORD.finditer(raw_text):
        surface = m.group()
        # a bare run of apostrophes is not a word
        if not any(ch.isalnum() for ch in surface):
            continue
        sentence = max(bisect.bisect_right(region_starts, m.start()) - 1, 0)
        tokens.append(
            Token(
                surface=surface,
                start=m.start(),
                end=m.end(),
                sentence_index=sentence,
                token_index=len(tokens),
                normalized=normalize(surface),
            )
        )
    return tokens
