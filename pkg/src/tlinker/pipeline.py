"""Composition of the stages: tokenize, tag events and timexes, link."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .lexicons import KeywordLexicon, VerbLexicon, default_time_words, default_verbs
from .model import AnnotatedDocument, Tense
from .taggers import detect_events, detect_timexes, renumber_events
from .tlinks import ClassifierConfig, link_document
from .tokenizer import tokenize


@dataclass(frozen=True)
class Lexicons:
    verbs: VerbLexicon = field(default_factory=default_verbs)
    time_words: KeywordLexicon = field(default_factory=default_time_words)


def tag_text(raw_text: str, doc_id: str = "", lexicons: Lexicons | None = None) -> AnnotatedDocument:
    """Tokenize and attach EVENT and TIMEX3 tags.

    A word can be both a verb and a time word ("march", "may"). Verbs with
    morphological or "will" evidence keep the token; a bare lemma gives way
    to the timex.
    """
    lex = lexicons or Lexicons()
    tokens = tokenize(raw_text)
    events = detect_events(tokens, lex.verbs)
    strong = {
        e.token_index for e in events if not (e.tense is Tense.PRESENT and e.aspect == "NONE")
    }
    timexes = detect_timexes(tokens, lex.time_words, raw_text=raw_text, blocked=strong)
    covered = {i for t in timexes for i, tok in enumerate(tokens) if t.start <= tok.start < t.end}
    kept = [e for e in events if e.token_index not in covered]
    if len(kept) != len(events):
        events = renumber_events(kept)
    return AnnotatedDocument(raw_text, tuple(tokens), tuple(events), tuple(timexes), (), doc_id)


def annotate(
    raw_text: str,
    doc_id: str = "",
    lexicons: Lexicons | None = None,
    config: ClassifierConfig | None = None,
) -> AnnotatedDocument:
    """Full pipeline: tags plus TLINKs."""
    return link_document(tag_text(raw_text, doc_id, lexicons), config)


def relink(doc: AnnotatedDocument, config: ClassifierConfig | None = None) -> AnnotatedDocument:
    return link_document(replace(doc, tlinks=()), config)
