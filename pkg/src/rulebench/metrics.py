"""Evaluation tables over classified matches.

Per-category and per-entity precision/recall with Wilson confidence
intervals, a ledger of manual FP-to-TP corrections (each one adds a gold
highlight, on the reading that the expert missed it), and the recall
distribution that tells the user when to stop adding categories.

Conventions: entity TP/FP are per-category sums, so a text region caught
by two categories counts twice on the precision side; FN is computed
from *distinct* caught highlights so recall stays meaningful. Precision
over zero matches is an explicit None, never silently 0 or 1.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from datetime import datetime, timezone
from statistics import NormalDist
from typing import Iterable, Iterator, Optional, Sequence

from .corpus import HighlightSpan
from .matching import FP, TP, TP_CORR, CategoryPattern, MatchRecord

CI_METHOD = "wilson-95"


class MetricsError(ValueError):
    """Metrics were requested for a state they are undefined on."""


class CorrectionError(Exception):
    """Invalid correction: unknown, duplicate, or not a false positive."""


def wilson_interval(
    successes: int, trials: int, *, confidence: float = 0.95
) -> Optional[tuple[float, float]]:
    """Wilson score interval for a binomial proportion; None when trials == 0."""
    if trials <= 0:
        return None
    if not 0 <= successes <= trials:
        raise ValueError(f"successes {successes} out of range for {trials} trials")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    # clamp away float noise so low <= p <= high holds exactly at the edges
    return (min(max(0.0, center - half), p), max(min(1.0, center + half), p))


def _ratio(num: int, den: int) -> Optional[float]:
    return num / den if den else None


@dataclass(frozen=True)
class CountBlock:
    tp: int
    fp: int
    fn: int
    precision: Optional[float]  # None when there are no matches


def _block(tp: int, fp: int, fn: int = 0) -> CountBlock:
    return CountBlock(tp, fp, fn, _ratio(tp, tp + fp))


@dataclass(frozen=True)
class CategoryMetrics:
    category_id: str
    label: str
    raw: CountBlock        # classification against the expert highlights only
    corrected: CountBlock  # with the correction ledger applied


def category_metrics(
    categories: Sequence[CategoryPattern],
    raw_matches: Sequence[MatchRecord],
    corrected_matches: Sequence[MatchRecord],
) -> list[CategoryMetrics]:
    """One row per category, raw and corrected counts side by side.

    Category-level FN is pinned at 0: misses are only defined against the
    whole entity, not against a single category.
    """
    raw_tp: Counter[str] = Counter()
    raw_fp: Counter[str] = Counter()
    for m in raw_matches:
        if m.classification == FP:
            raw_fp[m.category_id] += 1
        else:
            raw_tp[m.category_id] += 1
    corr_tp: Counter[str] = Counter()
    corr_fp: Counter[str] = Counter()
    for m in corrected_matches:
        if m.classification == FP:
            corr_fp[m.category_id] += 1
        else:
            corr_tp[m.category_id] += 1

    return [
        CategoryMetrics(
            cat.category_id,
            cat.label,
            _block(raw_tp[cat.category_id], raw_fp[cat.category_id]),
            _block(corr_tp[cat.category_id], corr_fp[cat.category_id]),
        )
        for cat in categories
    ]


@dataclass(frozen=True)
class EntityMetrics:
    entity: str
    homogeneity: Optional[float]
    tp: int
    fp: int
    fn: int
    precision: Optional[float]
    recall: float
    precision_ci: Optional[tuple[float, float]]
    recall_ci: Optional[tuple[float, float]]
    gold_count: int
    caught_count: int
    correction_count: int
    ci_method: str = CI_METHOD


def entity_metrics(
    entity: str,
    matches: Sequence[MatchRecord],
    highlights: Sequence[HighlightSpan],
    *,
    homogeneity: Optional[float] = None,
    correction_count: int = 0,
) -> EntityMetrics:
    """Aggregate classified matches into the per-entity score row.

    ``highlights`` must be the gold the matches were classified against
    (including correction-added spans). TP/FP sum over match records; FN
    is gold highlights minus distinct highlights caught by at least one
    true positive.
    """
    gold = [h for h in highlights if h.entity == entity]
    if not gold:
        raise MetricsError(f"entity {entity!r} has no highlights")
    tp = sum(1 for m in matches if m.classification in (TP, TP_CORR))
    fp = sum(1 for m in matches if m.classification == FP)
    caught = {m.matched_highlight for m in matches if m.matched_highlight is not None}
    fn = len(gold) - len(caught)
    recall = tp / (tp + fn) if (tp + fn) else 0.0
    return EntityMetrics(
        entity=entity,
        homogeneity=homogeneity,
        tp=tp,
        fp=fp,
        fn=fn,
        precision=_ratio(tp, tp + fp),
        recall=recall,
        precision_ci=wilson_interval(tp, tp + fp),
        recall_ci=wilson_interval(tp, tp + fn),
        gold_count=len(gold),
        caught_count=len(caught),
        correction_count=correction_count,
    )


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class CorrectionEntry:
    match_id: str
    converted_at: str  # ISO-8601 UTC
    highlight: HighlightSpan


class CorrectionLedger:
    """Record of manual FP-to-TP conversions, one per match identity.

    Each entry carries the gold highlight the conversion created (equal
    to the match span, tagged with the category's entity). Removing an
    entry restores the prior state exactly, so corrections are undoable.
    """

    def __init__(self, entries: Iterable[CorrectionEntry] = ()):
        self._entries: dict[str, CorrectionEntry] = {}
        for entry in entries:
            if entry.match_id in self._entries:
                raise CorrectionError(f"duplicate ledger entry {entry.match_id!r}")
            self._entries[entry.match_id] = entry

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[CorrectionEntry]:
        return iter(self._entries.values())

    def has(self, match_id: str) -> bool:
        return match_id in self._entries

    def get(self, match_id: str) -> Optional[CorrectionEntry]:
        return self._entries.get(match_id)

    def add(
        self, match_id: str, highlight: HighlightSpan, converted_at: Optional[str] = None
    ) -> CorrectionEntry:
        if match_id in self._entries:
            raise CorrectionError(f"match {match_id!r} was already converted")
        entry = CorrectionEntry(match_id, converted_at or _utc_now(), highlight)
        self._entries[match_id] = entry
        return entry

    def remove(self, match_id: str) -> CorrectionEntry:
        try:
            return self._entries.pop(match_id)
        except KeyError:
            raise CorrectionError(f"match {match_id!r} was not converted") from None

    def entries(self) -> list[CorrectionEntry]:
        return list(self._entries.values())

    def for_ids(self, match_ids: Iterable[str]) -> list[CorrectionEntry]:
        """Entries whose match still exists in the given id set."""
        wanted = set(match_ids)
        return [e for e in self._entries.values() if e.match_id in wanted]


@dataclass(frozen=True)
class RecallSlice:
    category_id: str
    label: str
    caught: int
    share: float


@dataclass(frozen=True)
class RecallDistribution:
    """Partition of an entity's gold highlights by first-catching category."""

    entity: str
    total: int
    slices: tuple[RecallSlice, ...]
    uncategorized: int
    uncategorized_share: float


def recall_distribution(
    entity: str,
    categories: Sequence[CategoryPattern],
    matches: Sequence[MatchRecord],
    highlights: Sequence[HighlightSpan],
) -> RecallDistribution:
    """Share of highlights each category captures, plus the leftover.

    A highlight caught by several categories is attributed to the first
    one in creation order, so the shares always form a partition.
    """
    gold = [h for h in highlights if h.entity == entity]
    if not gold:
        raise MetricsError(f"entity {entity!r} has no highlights")

    spans_by_cat: dict[str, dict[str, list[tuple[int, int]]]] = defaultdict(
        lambda: defaultdict(list)
    )
    for m in matches:
        spans_by_cat[m.category_id][m.doc_id].append((m.start, m.end))

    order = [c.category_id for c in categories]
    caught: Counter[str] = Counter()
    uncategorized = 0
    for h in gold:
        owner = None
        for cid in order:
            if any(h.overlaps(s, e) for s, e in spans_by_cat[cid].get(h.doc_id, ())):
                owner = cid
                break
        if owner is None:
            uncategorized += 1
        else:
            caught[owner] += 1

    total = len(gold)
    slices = tuple(
        RecallSlice(c.category_id, c.label, caught[c.category_id], caught[c.category_id] / total)
        for c in categories
    )
    return RecallDistribution(entity, total, slices, uncategorized, uncategorized / total)
