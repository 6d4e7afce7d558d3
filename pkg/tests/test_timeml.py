import random
import re

import pytest
from hypothesis import given, settings, strategies as st

from tlinker import annotate
from tlinker.model import AnnotatedDocument, EventTag, Tense
from tlinker.timeml import (
    DanglingReferenceError,
    DuplicateIdError,
    InvalidDocumentError,
    TimeMLParseError,
    UnsupportedRelationError,
    parse_timeml,
    serialize_timeml,
)
from tlinker.tokenizer import tokenize

from docgen import GAPS, random_document


def strip_markup(xml: str) -> str:
    inner = xml.split("<TEXT>", 1)[1].rsplit("</TEXT>", 1)[0]
    inner = re.sub(r"<[^>]+>", "", inner)
    return (
        inner.replace("&lt;", "<").replace("&gt;", ">").replace("&#13;", "\r").replace("&amp;", "&")
    )


def test_minimal_document():
    doc = parse_timeml("<TimeML><TEXT>hello</TEXT></TimeML>")
    assert doc.raw_text == "hello"
    assert doc.events == doc.timexes == doc.tlinks == ()
    assert [t.surface for t in doc.tokens] == ["hello"]


def test_empty_document_serializes_bare():
    xml = serialize_timeml(AnnotatedDocument(""))
    assert xml.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert re.sub(r"<\?xml[^>]*\?>|\s", "", xml) == "<TimeML><TEXT></TEXT></TimeML>"


def test_example_two_round_trip():
    doc = annotate("Sam ate an apple and went to school.", doc_id="ex2")
    assert parse_timeml(serialize_timeml(doc)) == doc


def test_example_one_has_one_simultaneous_link():
    xml = serialize_timeml(annotate("Sam ate an apple while he was doing homework."))
    assert xml.count('relType="SIMULTANEOUS"') == 1
    assert xml.count("<EVENT ") == 2


def test_attribute_order_fixed():
    xml = serialize_timeml(annotate("Sam ate an apple and went on Monday."))
    assert '<EVENT eid="e1" class="OCCURRENCE" tense="PAST" aspect="NONE">ate</EVENT>' in xml
    assert '<TIMEX3 tid="t1" type="DATE" value="Monday">Monday</TIMEX3>' in xml
    assert '<TLINK lid="l1" relType="BEFORE" sourceID="e1" targetID="e2"/>' in xml


def test_unsupported_relation():
    xml = (
        '<TimeML><TEXT><EVENT eid="e1">ate</EVENT> <EVENT eid="e2">went</EVENT></TEXT>'
        '<TLINK lid="l1" relType="INCLUDES" sourceID="e1" targetID="e2"/></TimeML>'
    )
    with pytest.raises(UnsupportedRelationError, match="INCLUDES"):
        parse_timeml(xml)


def test_malformed_xml_reports_position():
    with pytest.raises(TimeMLParseError) as err:
        parse_timeml("<TimeML>\n<TEXT>oops</TimeML>")
    assert err.value.line == 2


def test_dangling_reference_names_link():
    xml = '<TimeML><TEXT><EVENT eid="e1">ate</EVENT></TEXT><TLINK lid="l7" relType="BEFORE" sourceID="e1" targetID="e9"/></TimeML>'
    with pytest.raises(DanglingReferenceError, match="l7"):
        parse_timeml(xml)


def test_duplicate_ids():
    xml = '<TimeML><TEXT><EVENT eid="e1">ate</EVENT> <EVENT eid="e1">went</EVENT></TEXT></TimeML>'
    with pytest.raises(DuplicateIdError):
        parse_timeml(xml)


def test_gold_aliases_and_instances():
    xml = """<TimeML><TEXT>They <EVENT eid="e1" class="OCCURRENCE">met</EVENT> on
<TIMEX3 tid="t1" type="DATE" value="2015-01-05">Monday</TIMEX3> and <SIGNAL sid="s1">then</SIGNAL>
<EVENT eid="e2" tense="INFINITIVE">doing homework</EVENT>.</TEXT>
<MAKEINSTANCE eiid="ei1" eventID="e1"/><MAKEINSTANCE eiid="ei2" eventID="e2"/>
<TLINK lid="l1" relType="BEFORE" eventInstanceID="ei1" relatedToEventInstance="ei2" foo="bar"/>
<TLINK lid="l2" relType="SIMULTANEOUS" eventInstanceID="ei1" relatedToTime="t1"/>
</TimeML>"""
    doc = parse_timeml(xml)
    assert doc.raw_text == "They met on\nMonday and then\ndoing homework."
    assert [(l.source_id, l.target_id, l.rel_type.value) for l in doc.tlinks] == [
        ("e1", "e2", "BEFORE"),
        ("e1", "t1", "SIMULTANEOUS"),
    ]
    assert doc.events[1].tense is Tense.NONE
    assert doc.raw_text[slice(*doc.events[1].span)] == "doing homework"
    assert doc.tokens[doc.events[1].token_index].surface == "doing"
    assert doc.timexes[0].value == "2015-01-05"


def test_invalid_document_refused():
    text = "Sam ate."
    doc = AnnotatedDocument(text, tuple(tokenize(text)), (EventTag("e2", (4, 7), 1, Tense.PAST),))
    with pytest.raises(InvalidDocumentError) as err:
        serialize_timeml(doc)
    assert any("e2" in v for v in err.value.violations)


def test_special_characters_round_trip():
    text = 'Tom & Jerry <ate> "cake"\r\nthen went\r home\t.'
    doc = annotate(text, doc_id="a&b")
    xml = serialize_timeml(doc)
    assert strip_markup(xml) == text
    assert parse_timeml(xml) == doc
    assert parse_timeml(xml.encode("utf-8")) == doc


def test_random_documents_round_trip():
    rng = random.Random(21)
    for _ in range(200):
        doc = random_document(rng)
        xml = serialize_timeml(doc)
        assert parse_timeml(xml) == doc
        assert strip_markup(xml) == doc.raw_text


@settings(max_examples=150, deadline=None)
@given(
    st.lists(
        st.one_of(
            st.sampled_from(["ate", "went", "while", "and", "Monday", "morning", "2015", "drawing", "will", "march"]),
            st.text(alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters="\x00"), max_size=5),
            st.sampled_from(GAPS),
        ),
        max_size=25,
    )
)
def test_round_trip_property(parts):
    text = "".join(parts)
    doc = annotate(text)
    # documents holding XML-illegal characters are refused, not mangled
    try:
        xml = serialize_timeml(doc)
    except InvalidDocumentError as exc:
        assert any("XML" in v for v in exc.violations)
        return
    assert parse_timeml(xml) == doc
    assert strip_markup(xml) == text


def test_serialization_injective():
    rng = random.Random(22)
    seen = {}
    for _ in range(300):
        doc = random_document(rng)
        xml = serialize_timeml(doc)
        if xml in seen:
            assert seen[xml] == doc
        seen[xml] = doc
    # same text, different tags
    a = annotate("Sam ate and went.")
    b = annotate("Sam ate and went.", config=None).strip_tags()
    assert serialize_timeml(a) != serialize_timeml(b)
