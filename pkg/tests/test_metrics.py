from __future__ import annotations

import random

import pytest

from rulebench.corpus import HighlightSpan
from rulebench.matching import FP, TP, TP_CORR, MatchRecord, match_identity
from rulebench.metrics import (
    CorrectionError,
    CorrectionLedger,
    MetricsError,
    category_metrics,
    entity_metrics,
    recall_distribution,
    wilson_interval,
)
from rulebench.session import UnknownMatchError

from conftest import apply_scored_corrections, make_workbench
from fixturegen import SCORED_CATEGORIES, SCORED_ENTITY
from oracles import naive_wilson


# -- wilson intervals ----------------------------------------------------------


def test_wilson_matches_independent_formula():
    for s, n in ((57, 71), (57, 95), (1, 9), (9, 11), (0, 5), (5, 5)):
        low, high = wilson_interval(s, n)
        elow, ehigh = naive_wilson(s, n)
        assert low == pytest.approx(max(0.0, elow), abs=1e-12)
        assert high == pytest.approx(min(1.0, ehigh), abs=1e-12)
        assert 0.0 <= low <= s / n <= high <= 1.0


def test_wilson_frozen_values():
    low, high = wilson_interval(57, 71)
    assert (round(low, 4), round(high, 4)) == (0.6958, 0.8787)
    low, high = wilson_interval(57, 95)
    assert (round(low, 4), round(high, 4)) == (0.4995, 0.6928)


def test_wilson_zero_trials_is_undefined():
    assert wilson_interval(0, 0) is None


def test_wilson_rejects_bad_counts():
    with pytest.raises(ValueError):
        wilson_interval(6, 5)


# -- category and entity tables --------------------------------------------------


def _record(doc, start, end, cid, cls, highlight=None):
    return MatchRecord(
        match_identity(doc, start, end, cid), doc, start, end, "x", cid, 0, cls, highlight
    )


def test_category_precision_rounding_example(scored_workbench):
    cats, _ = scored_workbench.entity_metrics(SCORED_ENTITY)
    metastase = next(c for c in cats if c.category_id == "c_metastase")
    assert (metastase.raw.tp, metastase.raw.fp) == (22, 11)
    assert round(metastase.raw.precision, 2) == 0.67
    apply_scored_corrections(scored_workbench)
    cats, _ = scored_workbench.entity_metrics(SCORED_ENTITY)
    metastase = next(c for c in cats if c.category_id == "c_metastase")
    assert (metastase.corrected.tp, metastase.corrected.fp) == (26, 7)
    assert round(metastase.corrected.precision, 2) == 0.79
    assert (metastase.raw.tp, metastase.raw.fp) == (22, 11)  # raw view untouched


def test_category_with_no_matches_has_undefined_precision():
    from rulebench.matching import CategoryPattern, TermExpression

    cat = CategoryPattern("c0", "e", "c0", (TermExpression.term("x"),))
    rows = category_metrics([cat], [], [])
    assert rows[0].raw.precision is None
    assert rows[0].raw.tp == rows[0].raw.fp == 0


def test_entity_metrics_all_caught_is_perfect():
    h = HighlightSpan("d", "e", 0, 5, "aaaaa")
    matches = [_record("d", 0, 5, "c", TP, h)]
    em = entity_metrics("e", matches, [h])
    assert (em.precision, em.recall) == (1.0, 1.0)
    assert em.precision_ci[1] == 1.0
    assert em.recall_ci[1] == 1.0
    assert em.fn == 0


def test_entity_metrics_zero_matches():
    h = HighlightSpan("d", "e", 0, 5, "aaaaa")
    em = entity_metrics("e", [], [h])
    assert em.precision is None
    assert em.recall == 0.0
    assert em.fn == 1


def test_entity_metrics_requires_highlights():
    with pytest.raises(MetricsError, match="no highlights"):
        entity_metrics("ghost", [], [])


# -- correction ledger ------------------------------------------------------------


def test_ledger_rejects_double_conversion():
    ledger = CorrectionLedger()
    h = HighlightSpan("d", "e", 0, 5, "aaaaa")
    ledger.add("m1", h)
    with pytest.raises(CorrectionError, match="already converted"):
        ledger.add("m1", h)


def test_ledger_remove_unknown():
    with pytest.raises(CorrectionError, match="not converted"):
        CorrectionLedger().remove("nope")


def test_correct_unknown_match_raises(scored_workbench):
    with pytest.raises(UnknownMatchError):
        scored_workbench.correct("doesnotexist000")


def test_correct_requires_fp(scored_workbench):
    tp = scored_workbench.matches(SCORED_ENTITY, TP)[0]
    with pytest.raises(CorrectionError, match="not FP"):
        scored_workbench.correct(tp.match_id)


def test_correct_then_undo_restores_metrics_exactly(scored_workbench):
    before = scored_workbench.export_report_bytes()
    fp = scored_workbench.matches(SCORED_ENTITY, FP)[0]
    scored_workbench.correct(fp.match_id)
    mid = scored_workbench.export_report_bytes()
    assert mid != before
    scored_workbench.undo_correction(fp.match_id)
    assert scored_workbench.export_report_bytes() == before


def test_correction_adds_gold_highlight_and_reclassifies(scored_workbench):
    fp = scored_workbench.matches(SCORED_ENTITY, FP)[0]
    _, before = scored_workbench.entity_metrics(SCORED_ENTITY)
    scored_workbench.correct(fp.match_id)
    _, after = scored_workbench.entity_metrics(SCORED_ENTITY)
    assert after.gold_count == before.gold_count + 1
    assert after.tp == before.tp + 1
    assert after.fp == before.fp - 1
    record = next(
        m for m in scored_workbench.matches(SCORED_ENTITY) if m.match_id == fp.match_id
    )
    assert record.classification == TP_CORR
    assert record.matched_highlight is not None


def test_corrections_never_hurt_precision_or_recall(scored_workbench):
    rng = random.Random(5)
    fps = scored_workbench.matches(SCORED_ENTITY, FP)
    order = rng.sample(fps, 8)
    _, current = scored_workbench.entity_metrics(SCORED_ENTITY)
    for record in order:
        scored_workbench.correct(record.match_id)
        _, after = scored_workbench.entity_metrics(SCORED_ENTITY)
        assert after.precision >= (current.precision or 0.0)
        assert after.recall >= current.recall
        current = after


def test_conservation_of_highlights_under_corrections(scored_workbench):
    def check():
        _, em = scored_workbench.entity_metrics(SCORED_ENTITY)
        assert em.caught_count + em.fn == em.gold_count

    check()
    for record in scored_workbench.matches(SCORED_ENTITY, FP)[:5]:
        scored_workbench.correct(record.match_id)
        check()


def test_incremental_metrics_equal_recompute_from_scratch(
    scored_corpus, scored_import, scored_fixture
):
    incremental = make_workbench(scored_corpus, scored_import, scored_fixture)
    incremental.set_categories(SCORED_ENTITY, SCORED_CATEGORIES)
    apply_scored_corrections(incremental)

    fresh = make_workbench(scored_corpus, scored_import, scored_fixture)
    fresh.session = incremental.session  # same state, empty derived caches
    assert fresh.export_report_bytes() == incremental.export_report_bytes()


# -- recall distribution ------------------------------------------------------------


def test_distribution_zero_categories(clinic_workbench):
    dist = clinic_workbench.recall_distribution("symptomes")
    assert dist.slices == ()
    assert dist.uncategorized_share == 1.0


def test_distribution_is_partition(clinic_workbench):
    from fixturegen import SIGNS_CATEGORIES, SMOKING_CATEGORIES

    clinic_workbench.set_categories("statut_tabagique", SMOKING_CATEGORIES)
    clinic_workbench.set_categories("signes_physiques", SIGNS_CATEGORIES)
    for entity in ("statut_tabagique", "signes_physiques"):
        dist = clinic_workbench.recall_distribution(entity)
        total_share = sum(s.share for s in dist.slices) + dist.uncategorized_share
        assert total_share == pytest.approx(1.0, abs=1e-9)
        assert sum(s.caught for s in dist.slices) + dist.uncategorized == dist.total


def test_distribution_attributes_to_first_category(clinic_workbench):
    # both categories catch the same highlights; creation order wins
    cats = [
        {"id": "c_first", "terms": ["fumeur"]},
        {"id": "c_second", "terms": ["fumeur actif"]},
    ]
    clinic_workbench.set_categories("statut_tabagique", cats)
    dist = clinic_workbench.recall_distribution("statut_tabagique")
    shares = {s.category_id: s.caught for s in dist.slices}
    assert shares["c_first"] == 32
    assert shares["c_second"] == 0


def test_distribution_unknown_entity(clinic_workbench):
    from rulebench.session import UnknownEntityError

    with pytest.raises(UnknownEntityError):
        clinic_workbench.recall_distribution("ghost")
