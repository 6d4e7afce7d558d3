"""Scoring system annotations against gold annotations.

Tags are aligned by span (exact or overlapping), one-to-one, greedily from
left to right. A system TLINK counts as correct when both endpoints align
with a gold link's endpoints and the relations agree, either directly or
with the endpoints swapped and the relation inverted, so (a BEFORE b)
matches a gold (b AFTER a).

Counts are summed over documents before precision and recall are computed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .model import AnnotatedDocument, RelationType, TLink

CATEGORIES = ("EVENT", "TIMEX", "TLINK_BEFORE", "TLINK_AFTER", "TLINK_SIMULTANEOUS")

COUNT_ROWS = (
    ("Event Tag", "EVENT"),
    ("Timex Tag", "TIMEX"),
    ("TLINK (BEFORE)", "TLINK_BEFORE"),
    ("TLINK (AFTER)", "TLINK_AFTER"),
    ("TLINK (SIMULTANEOUS)", "TLINK_SIMULTANEOUS"),
)


class MatchMode(enum.Enum):
    EXACT = "exact"
    OVERLAP = "overlap"


class AlignmentError(ValueError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"{doc_id}: gold and system raw text differ")


@dataclass
class CategoryScore:
    gold_count: int = 0
    system_count: int = 0
    # system items matched to some gold item
    true_positives: int = 0
    # gold items matched by some system item; differs from true_positives
    # only when a TLINK matches its inverse across the BEFORE/AFTER buckets
    gold_matched: int = 0

    @property
    def false_positives(self) -> int:
        return self.system_count - self.true_positives

    @property
    def false_negatives(self) -> int:
        return self.gold_count - self.gold_matched

    @property
    def precision(self) -> float:
        if self.system_count == 0:
            return 1.0 if self.gold_count == 0 else 0.0
        return self.true_positives / self.system_count

    @property
    def recall(self) -> float:
        if self.gold_count == 0:
            return 1.0 if self.system_count == 0 else 0.0
        return self.gold_matched / self.gold_count

    def __iadd__(self, other: "CategoryScore") -> "CategoryScore":
        self.gold_count += other.gold_count
        self.system_count += other.system_count
        self.true_positives += other.true_positives
        self.gold_matched += other.gold_matched
        return self


@dataclass
class EvalReport:
    scores: dict[str, CategoryScore] = field(
        default_factory=lambda: {c: CategoryScore() for c in CATEGORIES}
    )

    def __getitem__(self, category: str) -> CategoryScore:
        return self.scores[category]

    def __iadd__(self, other: "EvalReport") -> "EvalReport":
        for c in CATEGORIES:
            self.scores[c] += other.scores[c]
        return self

    @classmethod
    def combine(cls, reports: Iterable["EvalReport"]) -> "EvalReport":
        total = cls()
        for r in reports:
            total += r
        return total


def _spans_agree(g, s, mode: MatchMode) -> bool:
    if mode is MatchMode.EXACT:
        return g.span == s.span
    return g.start < s.end and s.start < g.end


def match_spans(gold: Sequence, system: Sequence, mode: MatchMode = MatchMode.EXACT) -> list[tuple]:
    """Pair gold and system tags one-to-one, scanning both left to right.

    Each gold tag takes the leftmost still-unmatched system tag that agrees
    with it under ``mode``.
    """
    sys_sorted = sorted(system, key=lambda t: (t.start, t.end))
    used = [False] * len(sys_sorted)
    pairs = []
    for g in sorted(gold, key=lambda t: (t.start, t.end)):
        for k, s in enumerate(sys_sorted):
            if not used[k] and _spans_agree(g, s, mode):
                used[k] = True
                pairs.append((g, s))
                break
    return pairs


def match_tlinks(gold: Sequence[TLink], system: Sequence[TLink], sys_to_gold: dict) -> list[tuple[TLink, TLink]]:
    """Pair system links with gold links through an endpoint alignment.

    ``sys_to_gold`` maps system tag ids to gold tag ids. Same-direction
    matches are taken first so that a system emitting both a link and its
    inverse lines up with a gold file that does the same.
    """
    gold_free = list(gold)
    matched: list[tuple[TLink, TLink]] = []
    pending = []
    for s in system:
        src, dst = sys_to_gold.get(s.source_id), sys_to_gold.get(s.target_id)
        if src is None or dst is None:
            continue
        hit = next(
            (g for g in gold_free if (g.source_id, g.target_id, g.rel_type) == (src, dst, s.rel_type)),
            None,
        )
        if hit is None:
            pending.append((s, src, dst))
        else:
            gold_free.remove(hit)
            matched.append((hit, s))
    for s, src, dst in pending:
        hit = next(
            (
                g
                for g in gold_free
                if (g.source_id, g.target_id, g.rel_type) == (dst, src, s.rel_type.inverse)
            ),
            None,
        )
        if hit is not None:
            gold_free.remove(hit)
            matched.append((hit, s))
    return matched


def _link_category(link: TLink) -> str:
    return f"TLINK_{link.rel_type.value}"


def evaluate(gold_doc: AnnotatedDocument, sys_doc: AnnotatedDocument, mode: MatchMode = MatchMode.EXACT) -> EvalReport:
    if gold_doc.raw_text != sys_doc.raw_text:
        raise AlignmentError(gold_doc.doc_id or sys_doc.doc_id)
    report = EvalReport()
    sys_to_gold = {}
    for cat, gold_tags, sys_tags in (
        ("EVENT", gold_doc.events, sys_doc.events),
        ("TIMEX", gold_doc.timexes, sys_doc.timexes),
    ):
        pairs = match_spans(gold_tags, sys_tags, mode)
        score = report[cat]
        score.gold_count = len(gold_tags)
        score.system_count = len(sys_tags)
        score.true_positives = score.gold_matched = len(pairs)
        sys_to_gold.update((s.id, g.id) for g, s in pairs)

    for link in gold_doc.tlinks:
        report[_link_category(link)].gold_count += 1
    for link in sys_doc.tlinks:
        report[_link_category(link)].system_count += 1
    for g, s in match_tlinks(gold_doc.tlinks, sys_doc.tlinks, sys_to_gold):
        report[_link_category(s)].true_positives += 1
        report[_link_category(g)].gold_matched += 1
    return report


def count_report(docs: Iterable[tuple[AnnotatedDocument, AnnotatedDocument]]) -> list[tuple[str, int, int]]:
    """Rows of (label, manual count, automated count) per tag kind."""
    gold = dict.fromkeys(CATEGORIES, 0)
    system = dict.fromkeys(CATEGORIES, 0)
    for g, s in docs:
        for counts, doc in ((gold, g), (system, s)):
            counts["EVENT"] += len(doc.events)
            counts["TIMEX"] += len(doc.timexes)
            for link in doc.tlinks:
                counts[_link_category(link)] += 1
    return [(label, gold[c], system[c]) for label, c in COUNT_ROWS]


def format_report(report: EvalReport, tsv: bool = False) -> str:
    header = ("category", "gold_count", "system_count", "tp", "fp", "fn", "precision", "recall")
    rows = []
    for c in CATEGORIES:
        s = report[c]
        rows.append(
            (
                c,
                str(s.gold_count),
                str(s.system_count),
                str(s.true_positives),
                str(s.false_positives),
                str(s.false_negatives),
                f"{s.precision:.4f}",
                f"{s.recall:.4f}",
            )
        )
    if tsv:
        return "\n".join("\t".join(r) for r in (header, *rows)) + "\n"
    return _align([header, *rows])


def format_counts(rows: Sequence[tuple[str, int, int]], tsv: bool = False) -> str:
    header = ("Tag", "Manual tag count", "Automated tag count")
    body = [(label, str(g), str(s)) for label, g, s in rows]
    if tsv:
        return "\n".join("\t".join(r) for r in (header, *body)) + "\n"
    return _align([header, *body])


def _align(rows: list[tuple[str, ...]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"
