"""Pairwise temporal relation classification and TLINK generation.

Each candidate pair (a, b), with a earlier in the text, goes through four
rules and the first one that fires decides the relation:

1. a simultaneity keyword ("while") near either anchor, or between the two
   anchors inside one sentence: SIMULTANEOUS
2. a BEFORE keyword near exactly one anchor: that endpoint is BEFORE the other
3. different known tenses: the earlier tense (PAST < PRESENT < FUTURE) is BEFORE
4. same sentence, equal tenses, "and"/"then" between them: a BEFORE b

"Near" means inside ``window`` tokens on either side of the anchor, without
touching the anchor itself. Pairs where nothing fires get no link.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

from .lexicons import (
    KeywordLexicon,
    default_before_keywords,
    load_keyword_lexicon,
    normalize_phrase,
    phrase_lengths_at,
)
from .model import AnnotatedDocument, EventTag, RelationType, Tense, TLink, Token

_TENSE_RANK = {Tense.PAST: 0, Tense.PRESENT: 1, Tense.FUTURE: 2}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ClassifierConfig:
    window: int = 2
    # None lifts the limit and every pair in the document is a candidate
    max_sentence_gap: Optional[int] = 1
    simultaneous_keywords: KeywordLexicon = KeywordLexicon.of(["while"])
    before_keywords: KeywordLexicon = field(default_factory=default_before_keywords)
    order_conjunctions: frozenset[str] = frozenset({"and", "then"})
    emit_inverse: bool = True

    def __post_init__(self):
        if self.window < 0:
            raise ConfigError("window must be non-negative")
        if self.max_sentence_gap is not None and self.max_sentence_gap < 0:
            raise ConfigError("max_sentence_gap must be non-negative")
        if not len(self.simultaneous_keywords):
            raise ConfigError("simultaneous_keywords must not be empty")
        if not len(self.before_keywords):
            raise ConfigError("before_keywords must not be empty")
        if not self.order_conjunctions:
            raise ConfigError("order_conjunctions must not be empty")


def _words(value: str) -> list[str]:
    return [w.strip() for w in value.split(",") if w.strip()]


def _bool(value: str, lineno: int) -> bool:
    low = value.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"line {lineno}: expected a boolean, got {value!r}")


def _int(value: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"line {lineno}: expected an integer, got {value!r}") from None


def load_config(text: str, base: ClassifierConfig | None = None, root: Path | None = None) -> ClassifierConfig:
    """Read ``key = value`` lines over ``base`` (defaults when omitted).

    Keys: window, max_sentence_gap (integer, or "none" for unlimited),
    simultaneous_keywords, before_keywords, order_conjunctions (comma
    separated), before_keywords_file (path, relative to ``root``),
    emit_inverse.
    """
    cfg = base or ClassifierConfig()
    changes = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = (p.strip() for p in line.partition("="))
        if not sep:
            raise ConfigError(f"line {lineno}: expected key = value")
        if key == "window":
            changes["window"] = _int(value, lineno)
        elif key == "max_sentence_gap":
            if value.lower() in ("none", "unlimited", "-1"):
                changes["max_sentence_gap"] = None
            else:
                changes["max_sentence_gap"] = _int(value, lineno)
        elif key == "simultaneous_keywords":
            changes[key] = KeywordLexicon.of(_words(value))
        elif key == "before_keywords":
            changes[key] = KeywordLexicon.of(_words(value))
        elif key == "before_keywords_file":
            path = Path(value) if root is None else Path(root) / value
            changes["before_keywords"] = load_keyword_lexicon(path.read_text(encoding="utf-8"))
        elif key == "order_conjunctions":
            changes[key] = frozenset(normalize_phrase(w) for w in _words(value))
        elif key == "emit_inverse":
            changes[key] = _bool(value, lineno)
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return replace(cfg, **changes)


def anchor_range(tag, tokens: Sequence[Token]) -> tuple[int, int]:
    """First and last token index covered by a tag."""
    if isinstance(tag, EventTag):
        return tag.token_index, tag.token_index
    starts = [t.start for t in tokens]
    first = bisect.bisect_left(starts, tag.start)
    last = bisect.bisect_left(starts, tag.end) - 1
    return first, max(first, last)


def _keyword_near(lex: KeywordLexicon, tokens, anchor: tuple[int, int], window: int) -> bool:
    lo, hi = anchor[0] - window, anchor[1] + window
    for k in range(max(lo, 0), min(hi, len(tokens) - 1) + 1):
        if anchor[0] <= k <= anchor[1]:
            continue
        for length in phrase_lengths_at(lex, tokens, k):
            last = k + length - 1
            if last > hi:
                break
            if k > anchor[1] or last < anchor[0]:
                return True
    return False


def _keyword_between(lex: KeywordLexicon, tokens, left: int, right: int) -> bool:
    for k in range(left + 1, right):
        if any(k + length <= right for length in phrase_lengths_at(lex, tokens, k)):
            return True
    return False


def classify_pair(a, b, tokens: Sequence[Token], cfg: ClassifierConfig) -> Optional[RelationType]:
    """Relation of tag ``a`` to tag ``b`` (``a`` first in the text), or None."""
    ra, rb = anchor_range(a, tokens), anchor_range(b, tokens)
    same_sentence = tokens[ra[0]].sentence_index == tokens[rb[0]].sentence_index
    # tokens strictly between the anchors, whichever way round they were passed
    gap_lo, gap_hi = (ra[1], rb[0]) if ra[0] <= rb[0] else (rb[1], ra[0])
    w = cfg.window

    sim = cfg.simultaneous_keywords
    if (
        _keyword_near(sim, tokens, ra, w)
        or _keyword_near(sim, tokens, rb, w)
        or (same_sentence and _keyword_between(sim, tokens, gap_lo, gap_hi))
    ):
        return RelationType.SIMULTANEOUS

    near_a = _keyword_near(cfg.before_keywords, tokens, ra, w)
    near_b = _keyword_near(cfg.before_keywords, tokens, rb, w)
    if near_a != near_b:
        return RelationType.BEFORE if near_a else RelationType.AFTER

    ta, tb = a.tense, b.tense
    if ta in _TENSE_RANK and tb in _TENSE_RANK and ta != tb:
        return RelationType.BEFORE if _TENSE_RANK[ta] < _TENSE_RANK[tb] else RelationType.AFTER

    if same_sentence and ta == tb and ta is not Tense.NONE:
        conj = cfg.order_conjunctions
        if any(tokens[k].normalized in conj for k in range(gap_lo + 1, gap_hi)):
            return RelationType.BEFORE if ra[0] <= rb[0] else RelationType.AFTER
    return None


def candidate_pairs(doc: AnnotatedDocument, cfg: ClassifierConfig) -> list[tuple[str, str]]:
    tags = doc.tags()
    sentence = {t.id: doc.tokens[anchor_range(t, doc.tokens)[0]].sentence_index for t in tags}
    gap = cfg.max_sentence_gap
    pairs = []
    for i, a in enumerate(tags):
        for b in tags[i + 1 :]:
            if not a.start < b.start:
                continue
            if not (isinstance(a, EventTag) or isinstance(b, EventTag)):
                continue
            if gap is not None and abs(sentence[b.id] - sentence[a.id]) > gap:
                continue
            pairs.append((a.id, b.id))
    return pairs


def generate_tlinks(doc: AnnotatedDocument, cfg: ClassifierConfig) -> list[TLink]:
    index = doc.tag_index()
    triples = []
    for a_id, b_id in candidate_pairs(doc, cfg):
        rel = classify_pair(index[a_id], index[b_id], doc.tokens, cfg)
        if rel is None:
            continue
        triples.append((a_id, b_id, rel))
        if cfg.emit_inverse and rel is not RelationType.SIMULTANEOUS:
            triples.append((b_id, a_id, rel.inverse))
    links, seen = [], set()
    for src, dst, rel in triples:
        if (src, dst) in seen:
            continue
        seen.add((src, dst))
        links.append(TLink(f"l{len(links) + 1}", src, dst, rel))
    return links


def link_document(doc: AnnotatedDocument, cfg: ClassifierConfig | None = None) -> AnnotatedDocument:
    return replace(doc, tlinks=tuple(generate_tlinks(doc, cfg or ClassifierConfig())))
