"""Word lists that drive detection, and inflection-aware lookups against them.

Three bundled files live in ``tlinker/data``:

* ``action_verbs.txt``  lemmas, plus ``past=lemma`` lines for irregular verbs
* ``before_keywords.txt``  phrases signalling that an event came earlier
* ``time_words.txt``  month, weekday and time-of-day words

The directory can be overridden with ``TLINKER_LEXICON_DIR``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .model import Tense, Token
from .tokenizer import normalize

VERBS_FILE = "action_verbs.txt"
BEFORE_FILE = "before_keywords.txt"
TIME_FILE = "time_words.txt"
LEXICON_DIR_ENV = "TLINKER_LEXICON_DIR"

_VOWELS = set("aeiou")


class LexiconError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class VerbLexicon:
    base_forms: frozenset[str] = frozenset()
    irregular_past: dict[str, str] = field(default_factory=dict)

    def __hash__(self):
        return hash((self.base_forms, tuple(sorted(self.irregular_past.items()))))


@dataclass(frozen=True)
class KeywordLexicon:
    entries: frozenset[str] = frozenset()

    @property
    def max_phrase_len(self) -> int:
        return max((len(e.split()) for e in self.entries), default=0)

    @classmethod
    def of(cls, phrases) -> "KeywordLexicon":
        return cls(frozenset(p for p in (normalize_phrase(x) for x in phrases) if p))

    def __contains__(self, phrase: str) -> bool:
        return phrase in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def normalize_phrase(phrase: str) -> str:
    return " ".join(w for w in (normalize(p) for p in phrase.split()) if w)


def _entries(lines: str):
    for lineno, raw in enumerate(lines.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def load_verb_lexicon(lines: str) -> VerbLexicon:
    base, irregular = set(), {}
    for lineno, line in _entries(lines):
        if "=" in line:
            form, _, lemma = (part.strip().lower() for part in line.partition("="))
            if not form or not lemma:
                raise LexiconError(f"malformed irregular entry {line!r}", lineno)
            if any(ch.isspace() for ch in form + lemma):
                raise LexiconError(f"verb entries must be single words: {line!r}", lineno)
            irregular[form] = lemma
        else:
            word = line.lower()
            if any(ch.isspace() for ch in word):
                raise LexiconError(f"verb entries must be single words: {line!r}", lineno)
            base.add(word)
    return VerbLexicon(frozenset(base), irregular)


def load_keyword_lexicon(lines: str) -> KeywordLexicon:
    return KeywordLexicon.of(line for _, line in _entries(lines))


def load_lexicon(lines: str, kind: str = "auto"):
    """Parse lexicon text into a VerbLexicon or KeywordLexicon.

    ``kind`` is ``"verbs"``, ``"keywords"`` or ``"auto"``; auto picks the verb
    form when any line uses the ``form=lemma`` syntax.
    """
    if kind == "auto":
        kind = "verbs" if any("=" in line for _, line in _entries(lines)) else "keywords"
    if kind == "verbs":
        return load_verb_lexicon(lines)
    if kind == "keywords":
        return load_keyword_lexicon(lines)
    raise ValueError(f"unknown lexicon kind {kind!r}")


def _read(name: str, override: str | os.PathLike | None) -> str:
    if override is not None:
        path = Path(override)
    elif os.environ.get(LEXICON_DIR_ENV):
        path = Path(os.environ[LEXICON_DIR_ENV]) / name
    else:
        return resources.files("tlinker.data").joinpath(name).read_text(encoding="utf-8")
    return path.read_text(encoding="utf-8")


def default_verbs(path=None) -> VerbLexicon:
    return load_verb_lexicon(_read(VERBS_FILE, path))


def default_before_keywords(path=None) -> KeywordLexicon:
    return load_keyword_lexicon(_read(BEFORE_FILE, path))


def default_time_words(path=None) -> KeywordLexicon:
    return load_keyword_lexicon(_read(TIME_FILE, path))


def deinflect(form: str, suffix: str, base_forms) -> Optional[str]:
    """Undo ``suffix`` on ``form``; return the first candidate found in ``base_forms``.

    Candidates are tried in order: bare stem, stem + "e", stem with a doubled
    final consonant undoubled ("dropped" -> "drop").
    """
    if not form.endswith(suffix) or len(form) <= len(suffix):
        return None
    stem = form[: -len(suffix)]
    candidates = [stem, stem + "e"]
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1].isalpha() and stem[-1] not in _VOWELS:
        candidates.append(stem[:-1])
    for cand in candidates:
        if cand in base_forms:
            return cand
    return None


def match_verb(lexicon: VerbLexicon, token: Token | str) -> Optional[tuple[str, Tense, str]]:
    """Look a token up as an inflected action verb.

    Returns ``(lemma, tense, aspect)`` or None. Irregular past forms win, then
    "-ed" (past), then "-ing" (present progressive), then a bare lemma.
    """
    form = token if isinstance(token, str) else token.normalized
    lemma = lexicon.irregular_past.get(form)
    if lemma is not None:
        return lemma, Tense.PAST, "NONE"
    lemma = deinflect(form, "ed", lexicon.base_forms)
    if lemma is not None:
        return lemma, Tense.PAST, "NONE"
    lemma = deinflect(form, "ing", lexicon.base_forms)
    if lemma is not None:
        return lemma, Tense.PRESENT, "PROGRESSIVE"
    if form in lexicon.base_forms:
        return form, Tense.PRESENT, "NONE"
    return None


def phrase_lengths_at(lexicon: KeywordLexicon, tokens: Sequence[Token], at: int) -> list[int]:
    """Every length L such that tokens[at:at+L] spells a lexicon phrase."""
    found = []
    words = []
    for tok in tokens[at : at + lexicon.max_phrase_len]:
        words.append(tok.normalized)
        if " ".join(words) in lexicon.entries:
            found.append(len(words))
    return found


def match_phrase(lexicon: KeywordLexicon, tokens: Sequence[Token], at: int) -> Optional[int]:
    """Length in tokens of the longest lexicon phrase starting at ``at``."""
    lengths = phrase_lengths_at(lexicon, tokens, at)
    return lengths[-1] if lengths else None
