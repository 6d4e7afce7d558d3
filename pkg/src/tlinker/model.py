"""Domain types shared by every stage of the pipeline.

All types are frozen dataclasses holding tuples, so a document can be handed
to worker processes or threads without copying.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

_EID = re.compile(r"e([1-9][0-9]*)\Z")
_TID = re.compile(r"t([1-9][0-9]*)\Z")
_LID = re.compile(r"l([1-9][0-9]*)\Z")

# Characters that XML 1.0 cannot carry, even as character references.
_XML_ILLEGAL = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ud800-\udfff\ufffe\uffff]")


class Tense(str, Enum):
    PAST = "PAST"
    PRESENT = "PRESENT"
    FUTURE = "FUTURE"
    NONE = "NONE"


class RelationType(str, Enum):
    BEFORE = "BEFORE"
    AFTER = "AFTER"
    SIMULTANEOUS = "SIMULTANEOUS"

    @property
    def inverse(self) -> "RelationType":
        if self is RelationType.BEFORE:
            return RelationType.AFTER
        if self is RelationType.AFTER:
            return RelationType.BEFORE
        return self


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    sentence_index: int
    token_index: int
    normalized: str


@dataclass(frozen=True)
class EventTag:
    eid: str
    span: tuple[int, int]
    token_index: int
    tense: Tense = Tense.NONE
    aspect: str = "NONE"
    event_class: str = "OCCURRENCE"

    @property
    def id(self) -> str:
        return self.eid

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]


@dataclass(frozen=True)
class TimexTag:
    tid: str
    span: tuple[int, int]
    timex_type: str = "DATE"
    value: str = ""

    @property
    def id(self) -> str:
        return self.tid

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]

    # Timexes carry no tense; the linker treats them as NONE.
    tense = Tense.NONE


@dataclass(frozen=True)
class TLink:
    lid: str
    source_id: str
    target_id: str
    rel_type: RelationType


@dataclass(frozen=True)
class AnnotatedDocument:
    raw_text: str
    tokens: tuple[Token, ...] | None = None
    events: tuple[EventTag, ...] = ()
    timexes: tuple[TimexTag, ...] = ()
    tlinks: tuple[TLink, ...] = ()
    doc_id: str = ""

    def __post_init__(self):
        if self.tokens is None:
            from .tokenizer import tokenize

            object.__setattr__(self, "tokens", tuple(tokenize(self.raw_text)))
        # accept lists from callers but store tuples
        for name in ("tokens", "events", "timexes", "tlinks"):
            value = getattr(self, name)
            if not isinstance(value, tuple):
                object.__setattr__(self, name, tuple(value))

    def tags(self) -> list:
        """Events and timexes together, in textual order."""
        return sorted((*self.events, *self.timexes), key=lambda t: (t.start, t.end))

    def tag_index(self) -> dict:
        return {t.id: t for t in (*self.events, *self.timexes)}

    def strip_tags(self) -> "AnnotatedDocument":
        return AnnotatedDocument(self.raw_text, self.tokens, doc_id=self.doc_id)


@dataclass
class _Checker:
    violations: list[str] = field(default_factory=list)

    def fail(self, ident: str, rule: str) -> None:
        self.violations.append(f"{ident}: {rule}")


def _check_ids(chk: _Checker, ids: list[str], pattern: re.Pattern, kind: str) -> None:
    seen = set()
    for expected, ident in enumerate(ids, start=1):
        m = pattern.match(ident)
        if ident in seen:
            chk.fail(ident, f"duplicate {kind} id")
        elif m is None:
            chk.fail(ident, f"malformed {kind} id")
        elif int(m.group(1)) != expected:
            chk.fail(ident, f"{kind} ids not sequential (expected {kind[0]}{expected})")
        seen.add(ident)


def _check_overlaps(chk: _Checker, tags, what: str) -> None:
    ordered = sorted(tags, key=lambda t: (t.start, t.end))
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.start < prev.end:
            chk.fail(cur.id, f"{what} span overlaps {prev.id}")


def validate(doc: AnnotatedDocument) -> list[str]:
    """Return a list of invariant violations; empty means the document is valid.

    Each entry has the form ``"<id>: <rule>"`` where ``<id>`` names the
    offending tag, link or token.
    """
    from .tokenizer import tokenize

    chk = _Checker()
    text = doc.raw_text
    n = len(text)

    if _XML_ILLEGAL.search(text):
        chk.fail("raw_text", "contains characters not representable in XML")
    if _XML_ILLEGAL.search(doc.doc_id):
        chk.fail("doc_id", "contains characters not representable in XML")
    for ev in doc.events:
        if _XML_ILLEGAL.search(ev.event_class + ev.aspect):
            chk.fail(ev.eid, "attribute contains characters not representable in XML")
    for tx in doc.timexes:
        if _XML_ILLEGAL.search(tx.value):
            chk.fail(tx.tid, "attribute contains characters not representable in XML")

    prev = None
    for pos, tok in enumerate(doc.tokens):
        ident = f"token[{pos}]"
        if not tok.start < tok.end:
            chk.fail(ident, "start must be before end")
        if text[tok.start:tok.end] != tok.surface:
            chk.fail(ident, "surface differs from raw text slice")
        if tok.token_index != pos:
            chk.fail(ident, "token_index out of sequence")
        if prev is not None:
            if tok.start <= prev.start:
                chk.fail(ident, "token starts not strictly increasing")
            if tok.sentence_index < prev.sentence_index:
                chk.fail(ident, "sentence_index decreases")
        prev = tok
    if tuple(tokenize(text)) != doc.tokens:
        chk.fail("tokens", "do not match the tokenization of raw_text")

    by_span = {(t.start, t.end): t.token_index for t in doc.tokens}
    starts = {t.start for t in doc.tokens}
    ends = {t.end for t in doc.tokens}

    # events are expected in detection order, which is textual order
    _check_ids(chk, [e.eid for e in doc.events], _EID, "event")
    for ev in doc.events:
        s, e = ev.span
        if not 0 <= s < e <= n:
            chk.fail(ev.eid, "span outside raw_text")
        if by_span.get(ev.span) != ev.token_index:
            chk.fail(ev.eid, "span does not match its anchor token")
        if not isinstance(ev.tense, Tense):
            chk.fail(ev.eid, "unknown tense")
        if not ev.event_class:
            chk.fail(ev.eid, "empty event class")
    if [e.start for e in doc.events] != sorted(e.start for e in doc.events):
        chk.fail("events", "not in textual order")
    _check_overlaps(chk, doc.events, "event")

    _check_ids(chk, [t.tid for t in doc.timexes], _TID, "timex")
    for tx in doc.timexes:
        s, e = tx.span
        if not 0 <= s < e <= n:
            chk.fail(tx.tid, "span outside raw_text")
        if s not in starts or e not in ends:
            chk.fail(tx.tid, "span does not cover whole tokens")
        if tx.timex_type not in ("DATE", "TIME"):
            chk.fail(tx.tid, "timex type must be DATE or TIME")
    if [t.start for t in doc.timexes] != sorted(t.start for t in doc.timexes):
        chk.fail("timexes", "not in textual order")
    _check_overlaps(chk, doc.timexes, "timex")
    # inline markup cannot nest an EVENT inside a TIMEX3
    for tx in doc.timexes:
        for ev in doc.events:
            if ev.start < tx.end and tx.start < ev.end:
                chk.fail(ev.eid, f"event span overlaps timex {tx.tid}")

    _check_ids(chk, [l.lid for l in doc.tlinks], _LID, "tlink")
    known = doc.tag_index()
    pairs = set()
    for link in doc.tlinks:
        if link.source_id == link.target_id:
            chk.fail(link.lid, "source equals target")
        for end in (link.source_id, link.target_id):
            if end not in known:
                chk.fail(link.lid, f"endpoint {end} does not resolve")
        if not isinstance(link.rel_type, RelationType):
            chk.fail(link.lid, "unsupported relation type")
        key = (link.source_id, link.target_id)
        if key in pairs:
            chk.fail(link.lid, f"second link for pair {key[0]}->{key[1]}")
        pairs.add(key)
    return chk.violations
