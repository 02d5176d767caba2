"""Pattern categories compiled to corpus matchers, with TP/FP classification.

A category groups similar highlights of one entity. It is expressed as
plain terms, bounded-gap expressions ("large cell ...15 carcinoma" allows
up to 15 characters between the two segments), raw regexes, and ban
expressions that veto any match they overlap. Running a category over the
corpus yields match records classified against the entity's gold
highlights: a match overlapping a same-entity highlight by at least one
character is a true positive, anything else a false positive.
"""

from __future__ import annotations

import hashlib
import re
from bisect import bisect_left
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Callable, Collection, Iterable, Optional, Sequence

from .corpus import Corpus, Document, HighlightSpan, find_occurrences, normalize_text

TP = "TP"
FP = "FP"
TP_CORR = "TP_CORR"

CLASSIFICATION_DISPLAY = {TP: "TP", FP: "FP", TP_CORR: "TP(corr)"}

_GAP_SYNTAX_RE = re.compile(r"\s*(?:\.{3}|…)\s*(\d+)\s+")


class PatternError(ValueError):
    """A category or expression cannot be compiled."""


class MatcherError(ValueError):
    """A matcher operation was invoked with inconsistent arguments."""


@dataclass(frozen=True)
class TermExpression:
    """One searchable expression: a literal, a gapped sequence, or a regex.

    ``gaps[i]`` is the maximum number of characters (separators included)
    allowed between the end of ``segments[i]`` and the start of
    ``segments[i+1]``. Segments are order-sensitive.
    """

    segments: tuple[str, ...]
    gaps: tuple[int, ...] = ()
    is_regex: bool = False

    @classmethod
    def term(cls, literal: str) -> "TermExpression":
        return cls((literal,))

    @classmethod
    def gapped(cls, segments: Iterable[str], gaps: Iterable[int]) -> "TermExpression":
        return cls(tuple(segments), tuple(gaps))

    @classmethod
    def regex(cls, source: str) -> "TermExpression":
        return cls((source,), (), True)

    def display(self) -> str:
        if self.is_regex:
            return f"/{self.segments[0]}/"
        if not self.gaps:
            return self.segments[0]
        parts = [self.segments[0]]
        for gap, seg in zip(self.gaps, self.segments[1:]):
            parts.append(f"...{gap} {seg}")
        return " ".join(parts)


def parse_gap_syntax(text: str) -> TermExpression:
    """Parse the typed form "first ...15 second" into an expression.

    Accepts ASCII "..." or the ellipsis character. Text without a gap
    marker is a plain term.
    """
    pieces = _GAP_SYNTAX_RE.split(text)
    if len(pieces) == 1:
        return TermExpression.term(text)
    segments = pieces[0::2]
    gaps = [int(g) for g in pieces[1::2]]
    if any(not s.strip() for s in segments):
        raise PatternError(f"empty segment in gap expression {text!r}")
    return TermExpression.gapped([s.strip() for s in segments], gaps)


@dataclass(frozen=True)
class CategoryPattern:
    """A named pattern category belonging to one entity."""

    category_id: str
    entity: str
    label: str
    expressions: tuple[TermExpression, ...]
    ban_expressions: tuple[str, ...] = ()


def category_from_json(entity: str, obj: dict) -> CategoryPattern:
    """Build a category from its wire format.

    {"id", "label", "terms": [...], "gap_expressions":
     [{"segments": [...], "gaps": [...]}], "regexes": [...],
     "banwords": [...]}. Expression order is terms, then gap
    expressions, then regexes.
    """
    category_id = obj.get("id")
    if not category_id or not isinstance(category_id, str):
        raise PatternError("category is missing a string 'id'")
    terms = obj.get("terms", [])
    gap_exprs = obj.get("gap_expressions", [])
    regexes = obj.get("regexes", [])
    banwords = obj.get("banwords", [])
    expressions: list[TermExpression] = []
    expressions.extend(TermExpression.term(t) for t in terms)
    for ge in gap_exprs:
        expressions.append(TermExpression.gapped(ge["segments"], ge["gaps"]))
    expressions.extend(TermExpression.regex(r) for r in regexes)
    if not expressions:
        raise PatternError(f"category {category_id!r} has no expressions")
    label = obj.get("label") or ", ".join(f"'{t}'" for t in terms) or category_id
    return CategoryPattern(category_id, entity, label, tuple(expressions), tuple(banwords))


def category_to_json(cat: CategoryPattern) -> dict:
    terms = [e.segments[0] for e in cat.expressions if not e.is_regex and not e.gaps]
    gap_exprs = [
        {"segments": list(e.segments), "gaps": list(e.gaps)}
        for e in cat.expressions
        if not e.is_regex and e.gaps
    ]
    regexes = [e.segments[0] for e in cat.expressions if e.is_regex]
    return {
        "id": cat.category_id,
        "label": cat.label,
        "terms": terms,
        "gap_expressions": gap_exprs,
        "regexes": regexes,
        "banwords": list(cat.ban_expressions),
    }


def _gap_occurrences(
    doc: Document, segments: Sequence[str], gaps: Sequence[int]
) -> list[tuple[int, int]]:
    """Anchor on the first segment, then chain nearest continuations.

    For each occurrence of segments[0], each following segment must start
    within its gap budget after the previous segment ends; the nearest
    candidate is taken, so the produced span is the shortest one for that
    anchor.
    """
    occs = [find_occurrences(doc, seg) for seg in segments]
    if any(not o for o in occs):
        return []
    starts = [[s for s, _ in o] for o in occs]
    out = []
    for a_start, a_end in occs[0]:
        pos = a_end
        ok = True
        for i in range(1, len(segments)):
            j = bisect_left(starts[i], pos)
            if j == len(starts[i]) or starts[i][j] - pos > gaps[i - 1]:
                ok = False
                break
            pos = occs[i][j][1]
        if ok:
            out.append((a_start, pos))
    return out


def _merge_overlaps(candidates: list[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    """Collapse overlapping spans within one category to a single record.

    Keeps the earliest-starting span, longest on ties, so one text region
    never counts twice toward the same category.
    """
    candidates.sort(key=lambda c: (c[0], -c[1], c[2]))
    merged: list[tuple[int, int, int]] = []
    reach = -1
    for cand in candidates:
        if cand[0] >= reach:
            merged.append(cand)
            reach = cand[1]
        else:
            reach = max(reach, cand[1])
    return merged


class CompiledCategory:
    """Executable form of a CategoryPattern.

    ``ban_context`` widens each ban occurrence by that many characters on
    both sides before testing overlap with a candidate match.
    """

    def __init__(self, category: CategoryPattern, *, ban_context: int = 0):
        if not category.expressions:
            raise PatternError(f"category {category.category_id!r} has no expressions")
        self.category = category
        self.ban_context = ban_context
        self._finders: list[Callable[[Document], list[tuple[int, int]]]] = [
            self._compile(i, expr) for i, expr in enumerate(category.expressions)
        ]
        self._bans: list[str] = []
        for ban in category.ban_expressions:
            b = normalize_text(ban).strip()
            if not b:
                raise PatternError(
                    f"category {category.category_id!r}: empty ban expression"
                )
            self._bans.append(b)

    def _compile(self, index: int, expr: TermExpression):
        cid = self.category.category_id
        if expr.is_regex:
            try:
                pat = re.compile(expr.segments[0])
            except re.error as exc:
                raise PatternError(
                    f"category {cid!r}: invalid regex {expr.segments[0]!r}: {exc}"
                ) from exc
            return lambda doc: [m.span() for m in pat.finditer(doc.norm_text) if m.end() > m.start()]

        segments = tuple(normalize_text(s).strip() for s in expr.segments)
        if any(not s for s in segments):
            raise PatternError(
                f"category {cid!r}: expression {index} has an empty term after normalization"
            )
        if len(expr.gaps) != len(segments) - 1:
            raise PatternError(
                f"category {cid!r}: expression {index} needs {len(segments) - 1} gaps, got {len(expr.gaps)}"
            )
        if any(g < 0 for g in expr.gaps):
            raise PatternError(f"category {cid!r}: negative gap in expression {index}")
        if len(segments) == 1:
            literal = segments[0]
            return lambda doc: find_occurrences(doc, literal)
        gaps = tuple(expr.gaps)
        return lambda doc: _gap_occurrences(doc, segments, gaps)

    def _ban_spans(self, doc: Document) -> list[tuple[int, int]]:
        spans: list[tuple[int, int]] = []
        for ban in self._bans:
            spans.extend(find_occurrences(doc, ban))
        return spans

    def matches(self, doc: Document) -> list[tuple[int, int, int]]:
        """Merged, ban-filtered (start, end, expression_index) spans."""
        candidates: list[tuple[int, int, int]] = []
        for index, find in enumerate(self._finders):
            candidates.extend((s, e, index) for s, e in find(doc))
        if not candidates:
            return []
        bans = self._ban_spans(doc)
        if bans:
            ctx = self.ban_context
            candidates = [
                c for c in candidates
                if not any(bs - ctx < c[1] and c[0] < be + ctx for bs, be in bans)
            ]
        return _merge_overlaps(candidates)


def compile_category(category: CategoryPattern, *, ban_context: int = 0) -> CompiledCategory:
    return CompiledCategory(category, ban_context=ban_context)


def match_identity(doc_id: str, start: int, end: int, category_id: str) -> str:
    """Stable match id; survives recompiles that do not move the match."""
    payload = f"{doc_id}\x00{start}\x00{end}\x00{category_id}".encode("utf-8")
    return hashlib.sha1(payload).hexdigest()[:16]


@dataclass(frozen=True)
class MatchRecord:
    match_id: str
    doc_id: str
    start: int
    end: int
    surface: str
    category_id: str
    expression_index: int
    classification: str  # TP, FP or TP_CORR
    matched_highlight: Optional[HighlightSpan] = None


def _gold_by_doc(
    highlights: Iterable[HighlightSpan], entity: str
) -> dict[str, list[HighlightSpan]]:
    gold: dict[str, list[HighlightSpan]] = defaultdict(list)
    for h in highlights:
        if h.entity == entity:
            gold[h.doc_id].append(h)
    for spans in gold.values():
        spans.sort(key=lambda h: (h.start, h.end))
    return gold


def _check_entity(entity: str, categories: Sequence[CategoryPattern]) -> None:
    for cat in categories:
        if cat.entity != entity:
            raise MatcherError(
                f"category {cat.category_id!r} belongs to entity {cat.entity!r}, not {entity!r}"
            )


def run_entity(
    corpus: Corpus,
    entity: str,
    categories: Sequence[CategoryPattern],
    highlights: Sequence[HighlightSpan],
    corrected_ids: Collection[str] = frozenset(),
    *,
    ban_context: int = 0,
) -> list[MatchRecord]:
    """Match every category over the whole corpus and classify the results.

    Matches from different categories are kept separate (per-category
    counts sum at the entity level); within one category overlapping
    spans were already merged. ``corrected_ids`` marks matches manually
    converted from FP; they classify as TP_CORR provided their correction
    highlight is present in ``highlights``.
    """
    _check_entity(entity, categories)
    compiled = [CompiledCategory(c, ban_context=ban_context) for c in categories]
    gold = _gold_by_doc(highlights, entity)
    corrected = set(corrected_ids)

    records = []
    for doc in corpus:
        doc_gold = gold.get(doc.doc_id, [])
        for comp in compiled:
            cid = comp.category.category_id
            for start, end, expr_index in comp.matches(doc):
                hit = None
                for h in doc_gold:
                    if h.start >= end:
                        break
                    if h.overlaps(start, end):
                        hit = h
                        break
                mid = match_identity(doc.doc_id, start, end, cid)
                if hit is not None and mid in corrected:
                    cls = TP_CORR
                elif hit is not None:
                    cls = TP
                else:
                    cls = FP
                records.append(
                    MatchRecord(
                        mid, doc.doc_id, start, end, doc.norm_text[start:end],
                        cid, expr_index, cls, hit,
                    )
                )
    records.sort(key=lambda r: (r.doc_id, r.start, r.category_id))
    return records


def uncategorized_highlights(
    corpus: Corpus,
    entity: str,
    categories: Sequence[CategoryPattern],
    highlights: Sequence[HighlightSpan],
    *,
    ban_context: int = 0,
) -> list[tuple[str, int]]:
    """Highlights no category catches, grouped by surface with counts.

    Ordered by occurrence count descending, then surface, mirroring the
    review table an annotator scans for missing categories.
    """
    _check_entity(entity, categories)
    compiled = [CompiledCategory(c, ban_context=ban_context) for c in categories]
    gold = _gold_by_doc(highlights, entity)

    caught: set[HighlightSpan] = set()
    for doc in corpus:
        doc_gold = gold.get(doc.doc_id)
        if not doc_gold:
            continue
        spans: list[tuple[int, int]] = []
        for comp in compiled:
            spans.extend((s, e) for s, e, _ in comp.matches(doc))
        for h in doc_gold:
            if any(h.overlaps(s, e) for s, e in spans):
                caught.add(h)

    counts = Counter(h.surface for spans in gold.values() for h in spans if h not in caught)
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


@dataclass(frozen=True)
class SpacingRow:
    gap: int
    tp: int  # cumulative over gaps <= this one
    fp: int


@dataclass(frozen=True)
class SpacingProfile:
    entity: str
    first: str
    second: str
    rows: tuple[SpacingRow, ...]

    def at(self, gap: int) -> tuple[int, int]:
        """(tp, fp) the matcher would yield with this gap threshold."""
        tp = fp = 0
        for row in self.rows:
            if row.gap > gap:
                break
            tp, fp = row.tp, row.fp
        return tp, fp


def spacing_profile(
    corpus: Corpus,
    entity: str,
    first: str,
    second: str,
    highlights: Sequence[HighlightSpan],
    *,
    gap_cap: int = 200,
) -> SpacingProfile:
    """TP/FP trade-off per gap threshold for a two-segment expression.

    Pairs every occurrence of ``first`` with its nearest following
    occurrence of ``second`` (the span the gap matcher would produce) up
    to ``gap_cap`` characters apart, classifies the combined span against
    the entity's highlights, and reports cumulative TP/FP per observed
    gap so the user can read off the best threshold.
    """
    f = normalize_text(first).strip()
    s = normalize_text(second).strip()
    if not f or not s:
        raise ValueError("empty segment")
    if gap_cap < 0:
        raise ValueError("gap_cap must be >= 0")

    gold = _gold_by_doc(highlights, entity)
    observations: list[tuple[int, bool]] = []
    for doc in corpus:
        first_occ = find_occurrences(doc, f)
        second_occ = find_occurrences(doc, s)
        if not first_occ or not second_occ:
            continue
        second_starts = [st for st, _ in second_occ]
        doc_gold = gold.get(doc.doc_id, [])
        for a_start, a_end in first_occ:
            j = bisect_left(second_starts, a_end)
            if j == len(second_starts):
                continue
            gap = second_starts[j] - a_end
            if gap > gap_cap:
                continue
            span_end = second_occ[j][1]
            is_tp = any(h.overlaps(a_start, span_end) for h in doc_gold)
            observations.append((gap, is_tp))

    observations.sort(key=lambda o: o[0])
    rows: list[SpacingRow] = []
    tp = fp = 0
    for gap, is_tp in observations:
        if is_tp:
            tp += 1
        else:
            fp += 1
        if rows and rows[-1].gap == gap:
            rows[-1] = SpacingRow(gap, tp, fp)
        else:
            rows.append(SpacingRow(gap, tp, fp))
    return SpacingProfile(entity, f, s, tuple(rows))
