import random
from dataclasses import replace

import pytest

from tlinker.model import AnnotatedDocument, EventTag, RelationType, Tense, TimexTag, TLink, validate
from tlinker.tokenizer import tokenize

from docgen import random_document


def _doc(text, **kw):
    return AnnotatedDocument(text, tuple(tokenize(text)), **kw)


def test_untagged_document_is_valid():
    assert validate(_doc("Sam ate an apple.")) == []
    assert validate(AnnotatedDocument("")) == []


def test_tokens_derived_when_omitted():
    doc = AnnotatedDocument("Sam ate.")
    assert [t.surface for t in doc.tokens] == ["Sam", "ate"]


def test_duplicate_eid_reported_once():
    text = "Sam ate and went."
    events = (
        EventTag("e1", (4, 7), 1, Tense.PAST),
        EventTag("e1", (12, 16), 3, Tense.PAST),
    )
    violations = validate(_doc(text, events=events))
    assert len(violations) == 1
    assert violations[0].startswith("e1:")


def test_self_link_reported():
    text = "Sam ate."
    doc = _doc(
        text,
        events=(EventTag("e1", (4, 7), 1, Tense.PAST),),
        tlinks=(TLink("l1", "e1", "e1", RelationType.BEFORE),),
    )
    assert validate(doc) == ["l1: source equals target"]


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: replace(d, events=(replace(d.events[0], span=(4, 6)),)), "anchor token"),
        (lambda d: replace(d, events=(replace(d.events[0], eid="e2"),)), "sequential"),
        (lambda d: replace(d, events=(replace(d.events[0], eid="x1"),)), "malformed"),
        (lambda d: replace(d, tlinks=(TLink("l1", "e1", "e9", RelationType.AFTER),)), "does not resolve"),
        (lambda d: replace(d, timexes=(TimexTag("t1", (0, 2), "DATE", "Sa"),)), "whole tokens"),
        (lambda d: replace(d, timexes=(TimexTag("t1", (4, 7), "DATE", "ate"),)), "overlaps timex"),
        (lambda d: replace(d, timexes=(TimexTag("t1", (0, 3), "DURATION", "Sam"),)), "DATE or TIME"),
        (lambda d: replace(d, raw_text="Sam ate.\x00"), "XML"),
        (lambda d: replace(d, tokens=d.tokens[1:]), "tokenization"),
    ],
)
def test_violations_name_the_rule(mutate, fragment):
    base = _doc("Sam ate.", events=(EventTag("e1", (4, 7), 1, Tense.PAST),))
    assert validate(base) == []
    violations = validate(mutate(base))
    assert violations and any(fragment in v for v in violations), violations


def test_conflicting_links_on_one_pair():
    doc = _doc(
        "Sam ate and went.",
        events=(EventTag("e1", (4, 7), 1, Tense.PAST), EventTag("e2", (12, 16), 3, Tense.PAST)),
        tlinks=(
            TLink("l1", "e1", "e2", RelationType.BEFORE),
            TLink("l2", "e1", "e2", RelationType.AFTER),
        ),
    )
    assert validate(doc) == ["l2: second link for pair e1->e2"]


def test_relation_inverse():
    assert RelationType.BEFORE.inverse is RelationType.AFTER
    assert RelationType.AFTER.inverse is RelationType.BEFORE
    assert RelationType.SIMULTANEOUS.inverse is RelationType.SIMULTANEOUS


def test_stripping_valid_documents_keeps_them_valid():
    rng = random.Random(7)
    for _ in range(100):
        doc = random_document(rng)
        assert validate(doc) == []
        assert validate(doc.strip_tags()) == []
        # deterministic and order-stable
        assert validate(doc) == validate(doc)
