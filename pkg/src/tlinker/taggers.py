"""EVENT and TIMEX3 detection over a token sequence."""
from __future__ import annotations

from dataclasses import replace
from typing import Collection, Sequence

from .lexicons import KeywordLexicon, VerbLexicon, match_verb, phrase_lengths_at
from .model import EventTag, Tense, TimexTag, Token

# Time words that make a timex a TIME rather than a DATE.
TIME_OF_DAY = frozenset({"min", "mins", "minute", "minutes", "hour", "hours", "morning", "evening"})

_MAX_NUMBER_DIGITS = 4


def detect_events(tokens: Sequence[Token], verbs: VerbLexicon) -> list[EventTag]:
    """Tag every token that reads as an action verb.

    A verb directly after "will" is FUTURE unless it is an irregular past
    form, which keeps PAST.
    """
    events = []
    for i, tok in enumerate(tokens):
        hit = match_verb(verbs, tok)
        if hit is None:
            continue
        _, tense, aspect = hit
        after_will = i > 0 and tokens[i - 1].normalized == "will"
        if after_will and tok.normalized not in verbs.irregular_past:
            tense = Tense.FUTURE
        events.append(
            EventTag(
                eid=f"e{len(events) + 1}",
                span=(tok.start, tok.end),
                token_index=tok.token_index,
                tense=tense,
                aspect=aspect,
            )
        )
    return events


def _is_number(tok: Token) -> bool:
    s = tok.surface
    return s.isascii() and s.isdigit() and len(s) <= _MAX_NUMBER_DIGITS


def detect_timexes(
    tokens: Sequence[Token],
    time_words: KeywordLexicon,
    raw_text: str | None = None,
    blocked: Collection[int] = (),
) -> list[TimexTag]:
    """Group time words, and numbers right next to them, into TIMEX3 spans.

    A run stops at a sentence boundary and at any token index in ``blocked``
    (used by the pipeline to keep tokens already claimed as events). The
    timex value is the covered slice of ``raw_text``; without it the token
    surfaces are joined by single spaces.
    """
    blocked = set(blocked)
    n = len(tokens)
    is_word = [False] * n
    i = 0
    while i < n:
        lengths = [
            L for L in phrase_lengths_at(time_words, tokens, i)
            if not any(j in blocked for j in range(i, i + L))
        ]
        if lengths:
            for j in range(i, i + lengths[-1]):
                is_word[j] = True
            i += lengths[-1]
        else:
            i += 1

    def same_sentence(a: int, b: int) -> bool:
        return tokens[a].sentence_index == tokens[b].sentence_index

    member = list(is_word)
    for i in range(n):
        if is_word[i] or i in blocked or not _is_number(tokens[i]):
            continue
        left = i > 0 and is_word[i - 1] and same_sentence(i - 1, i)
        right = i + 1 < n and is_word[i + 1] and same_sentence(i, i + 1)
        member[i] = left or right

    timexes = []
    i = 0
    while i < n:
        if not member[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and member[j + 1] and same_sentence(j, j + 1):
            j += 1
        run = tokens[i : j + 1]
        kind = "TIME" if any(t.normalized in TIME_OF_DAY for t in run) else "DATE"
        start, end = run[0].start, run[-1].end
        if raw_text is not None:
            value = raw_text[start:end]
        else:
            value = " ".join(t.surface for t in run)
        timexes.append(
            TimexTag(tid=f"t{len(timexes) + 1}", span=(start, end), timex_type=kind, value=value)
        )
        i = j + 1
    return timexes


def renumber_events(events: Sequence[EventTag]) -> list[EventTag]:
    return [replace(e, eid=f"e{k}") for k, e in enumerate(events, start=1)]
