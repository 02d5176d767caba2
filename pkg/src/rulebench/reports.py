"""JSON payload shapes shared by the HTTP API and the headless report.

Stored values stay full precision; every user-facing number also gets a
``*_display`` companion rounded to 2 decimal places, so clients render
exactly what the service computed.
"""

from __future__ import annotations

from typing import Optional

from .analytics import HomogeneityScore, NgramExpansion, TermScore
from .decision import ChecklistResult
from .matching import (
    CLASSIFICATION_DISPLAY,
    MatchRecord,
    SpacingProfile,
)
from .metrics import CategoryMetrics, CountBlock, EntityMetrics, RecallDistribution


def round2(value: Optional[float]) -> Optional[float]:
    return None if value is None else round(value, 2)


def _ci_payload(ci: Optional[tuple[float, float]]) -> Optional[list[float]]:
    return None if ci is None else [ci[0], ci[1]]


def homogeneity_payload(score: HomogeneityScore) -> dict:
    return {
        "entity": score.entity,
        "total_tokens": score.total_tokens,
        "unique_tokens": score.unique_tokens,
        "ratio": score.ratio,
        "score": score.score,
        "score_display": round2(score.score),
    }


def term_payload(term: TermScore, expansions: list[NgramExpansion]) -> dict:
    return {
        "term": term.term,
        "count": term.count,
        "tf": term.tf,
        "idf": term.idf,
        "score": term.score,
        "score_display": round2(term.score),
        "ngrams": [
            {"tokens": list(n.tokens), "text": n.text, "count": n.count}
            for n in expansions
        ],
    }


def _block_payload(block: CountBlock) -> dict:
    return {
        "tp": block.tp,
        "fp": block.fp,
        "fn": block.fn,
        "precision": block.precision,
        "precision_display": round2(block.precision),
    }


def category_metrics_payload(cm: CategoryMetrics) -> dict:
    return {
        "category_id": cm.category_id,
        "label": cm.label,
        "raw": _block_payload(cm.raw),
        "corrected": _block_payload(cm.corrected),
    }


def entity_metrics_payload(em: EntityMetrics) -> dict:
    return {
        "entity": em.entity,
        "homogeneity": em.homogeneity,
        "homogeneity_display": round2(em.homogeneity),
        "tp": em.tp,
        "fp": em.fp,
        "fn": em.fn,
        "precision": em.precision,
        "precision_display": round2(em.precision),
        "precision_ci": _ci_payload(em.precision_ci),
        "precision_ci_display": None
        if em.precision_ci is None
        else [round2(em.precision_ci[0]), round2(em.precision_ci[1])],
        "recall": em.recall,
        "recall_display": round2(em.recall),
        "recall_ci": _ci_payload(em.recall_ci),
        "recall_ci_display": None
        if em.recall_ci is None
        else [round2(em.recall_ci[0]), round2(em.recall_ci[1])],
        "ci_method": em.ci_method,
        "gold_highlights": em.gold_count,
        "caught_highlights": em.caught_count,
        "includes_corrections": em.correction_count,
    }


def match_payload(record: MatchRecord, before: str = "", after: str = "") -> dict:
    return {
        "match_id": record.match_id,
        "doc_id": record.doc_id,
        "start": record.start,
        "end": record.end,
        "surface": record.surface,
        "category_id": record.category_id,
        "expression_index": record.expression_index,
        "classification": record.classification,
        "classification_display": CLASSIFICATION_DISPLAY[record.classification],
        "before": before,
        "after": after,
    }


def spacing_payload(profile: SpacingProfile) -> dict:
    return {
        "entity": profile.entity,
        "first": profile.first,
        "second": profile.second,
        "rows": [{"gap": r.gap, "tp": r.tp, "fp": r.fp} for r in profile.rows],
    }


def distribution_payload(dist: RecallDistribution) -> dict:
    return {
        "entity": dist.entity,
        "total": dist.total,
        "slices": [
            {
                "category_id": s.category_id,
                "label": s.label,
                "caught": s.caught,
                "share": s.share,
                "share_display": round2(s.share),
            }
            for s in dist.slices
        ],
        "uncategorized": dist.uncategorized,
        "uncategorized_share": dist.uncategorized_share,
        "uncategorized_share_display": round2(dist.uncategorized_share),
    }


def checklist_payload(result: ChecklistResult) -> dict:
    return {
        "entity": result.entity,
        "verdict": result.verdict,
        "criteria": [
            {
                "code": c.code,
                "label": c.label,
                "value": c.value,
                "value_display": round2(c.value) if isinstance(c.value, float) else c.value,
                "threshold": c.threshold,
                "status": c.status,
                "mark": c.mark,
                "note": c.note,
            }
            for c in result.criteria
        ],
    }
