"""Reading and writing the EVENT/TIMEX3/TLINK subset of TimeML.

On disk a document looks like::

    <?xml version="1.0" encoding="UTF-8"?>
    <TimeML>
    <DOCID>wsj_0001</DOCID>
    <TEXT>Sam <EVENT eid="e1" class="OCCURRENCE" tense="PAST" aspect="NONE">ate</EVENT> ...</TEXT>
    <TLINK lid="l1" relType="BEFORE" sourceID="e1" targetID="e2"/>
    </TimeML>

Removing the markup inside ``<TEXT>`` gives back the raw text exactly;
carriage returns are written as ``&#13;`` so XML line-end normalization
cannot eat them.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .model import AnnotatedDocument, EventTag, RelationType, Tense, TimexTag, TLink, validate
from .tokenizer import tokenize

XML_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'

# gold files written to the full guidelines link event instances, not events
_SOURCE_ATTRS = ("sourceID", "eventInstanceID", "timeID")
_TARGET_ATTRS = ("targetID", "relatedToEventInstance", "relatedToTime")


class TimeMLError(ValueError):
    pass


class TimeMLParseError(TimeMLError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class DuplicateIdError(TimeMLError):
    pass


class DanglingReferenceError(TimeMLError):
    pass


class UnsupportedRelationError(TimeMLError):
    pass


class InvalidDocumentError(TimeMLError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("document failed validation:\n  " + "\n  ".join(violations))


def _tense(value: str | None) -> Tense:
    try:
        return Tense(value)
    except ValueError:
        # INFINITIVE, PRESPART and friends have no place in the subset
        return Tense.NONE


@dataclass
class _Span:
    elem: ET.Element
    start: int
    end: int = -1


def _walk_text(text_elem: ET.Element):
    """Flatten TEXT content into raw text plus the spans of its inline elements."""
    parts: list[str] = []
    spans: list[_Span] = []
    offset = 0

    def visit(elem):
        nonlocal offset
        if elem.text:
            parts.append(elem.text)
            offset += len(elem.text)
        for child in elem:
            span = _Span(child, offset)
            visit(child)
            span.end = offset
            spans.append(span)
            if child.tail:
                parts.append(child.tail)
                offset += len(child.tail)

    visit(text_elem)
    return "".join(parts), spans


def parse_timeml(xml: str | bytes, doc_id: str | None = None) -> AnnotatedDocument:
    """Build an AnnotatedDocument from TimeML text.

    Event anchors are the first token inside each EVENT. ``doc_id`` overrides
    the document's DOCID element.
    """
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as exc:
        line, col = exc.position
        raise TimeMLParseError(f"malformed XML: {exc}", line, col) from None

    text_elem = root.find("TEXT") if root.tag != "TEXT" else root
    if text_elem is None:
        raw_text, spans = "", []
    else:
        raw_text, spans = _walk_text(text_elem)
    tokens = tuple(tokenize(raw_text))
    token_starts = [t.start for t in tokens]

    events, timexes, seen = [], [], set()
    for span in sorted(spans, key=lambda s: (s.start, s.end)):
        elem = span.elem
        if elem.tag == "EVENT":
            ident = elem.get("eid")
            if ident is None:
                raise TimeMLError("EVENT without eid")
            anchor = next(
                (i for i, s in enumerate(token_starts) if span.start <= s < span.end),
                None,
            )
            if anchor is None:
                raise TimeMLError(f"EVENT {ident} covers no word")
            tag = EventTag(
                eid=ident,
                span=(span.start, span.end),
                token_index=anchor,
                tense=_tense(elem.get("tense")),
                aspect=elem.get("aspect", "NONE"),
                event_class=elem.get("class", "OCCURRENCE"),
            )
            events.append(tag)
        elif elem.tag == "TIMEX3":
            ident = elem.get("tid")
            if ident is None:
                raise TimeMLError("TIMEX3 without tid")
            tag = TimexTag(
                tid=ident,
                span=(span.start, span.end),
                timex_type=elem.get("type", "DATE"),
                value=elem.get("value", raw_text[span.start : span.end]),
            )
            timexes.append(tag)
        else:
            continue
        if ident in seen:
            raise DuplicateIdError(f"duplicate id {ident}")
        seen.add(ident)

    instance_of = {
        mi.get("eiid"): mi.get("eventID") for mi in root.iter("MAKEINSTANCE") if mi.get("eiid")
    }
    tlinks = []
    for elem in root.iter("TLINK"):
        lid = elem.get("lid", f"l{len(tlinks) + 1}")
        rel = elem.get("relType")
        if rel not in RelationType.__members__:
            raise UnsupportedRelationError(f"TLINK {lid}: unsupported relType {rel!r}")
        ends = []
        for names in (_SOURCE_ATTRS, _TARGET_ATTRS):
            ref = next((elem.get(n) for n in names if elem.get(n) is not None), None)
            ref = instance_of.get(ref, ref)
            if ref is None or ref not in seen:
                raise DanglingReferenceError(f"TLINK {lid}: endpoint {ref!r} does not resolve")
            ends.append(ref)
        tlinks.append(TLink(lid, ends[0], ends[1], RelationType(rel)))

    if doc_id is None:
        docid_elem = root.find("DOCID")
        doc_id = (docid_elem.text or "") if docid_elem is not None else ""
    return AnnotatedDocument(raw_text, tokens, tuple(events), tuple(timexes), tuple(tlinks), doc_id)


def _escape_text(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace("\r", "&#13;")


def _escape_attr(s: str) -> str:
    return (
        _escape_text(s)
        .replace('"', "&quot;")
        .replace("\n", "&#10;")
        .replace("\t", "&#9;")
    )


def _attrs(pairs) -> str:
    return "".join(f' {k}="{_escape_attr(str(v))}"' for k, v in pairs)


def serialize_timeml(doc: AnnotatedDocument) -> str:
    violations = validate(doc)
    if violations:
        raise InvalidDocumentError(violations)

    text = doc.raw_text
    opening = []
    for ev in doc.events:
        attrs = _attrs(
            [("eid", ev.eid), ("class", ev.event_class), ("tense", ev.tense.value), ("aspect", ev.aspect)]
        )
        opening.append((ev.start, ev.end, "EVENT", attrs))
    for tx in doc.timexes:
        attrs = _attrs([("tid", tx.tid), ("type", tx.timex_type), ("value", tx.value)])
        opening.append((tx.start, tx.end, "TIMEX3", attrs))
    opening.sort()

    out = [XML_HEADER, "<TimeML>\n"]
    if doc.doc_id:
        out.append(f"<DOCID>{_escape_text(doc.doc_id)}</DOCID>\n")
    out.append("<TEXT>")
    pos = 0
    for start, end, name, attrs in opening:
        out.append(_escape_text(text[pos:start]))
        out.append(f"<{name}{attrs}>{_escape_text(text[start:end])}</{name}>")
        pos = end
    out.append(_escape_text(text[pos:]))
    out.append("</TEXT>\n")
    for link in doc.tlinks:
        attrs = _attrs(
            [
                ("lid", link.lid),
                ("relType", link.rel_type.value),
                ("sourceID", link.source_id),
                ("targetID", link.target_id),
            ]
        )
        out.append(f"<TLINK{attrs}/>\n")
    out.append("</TimeML>\n")
    return "".join(out)


def read_timeml(path, doc_id: str | None = None) -> AnnotatedDocument:
    from pathlib import Path

    path = Path(path)
    return parse_timeml(path.read_bytes(), doc_id=path.stem if doc_id is None else doc_id)
