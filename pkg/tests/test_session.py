from __future__ import annotations

import json

import pytest

from rulebench.decision import ChecklistThresholds
from rulebench.session import (
    ProjectSession,
    SessionError,
    Workbench,
    load_session,
    save_session,
)

from conftest import apply_scored_corrections, make_workbench
from fixturegen import SCORED_CATEGORIES, SCORED_ENTITY


def test_empty_session_roundtrip(tmp_path):
    session = ProjectSession("corpus_dir", "highlights.jsonl")
    path = save_session(session, tmp_path / "s.json")
    loaded = load_session(path)
    assert loaded.to_json() == session.to_json()


def test_roundtrip_is_byte_stable(tmp_path):
    session = ProjectSession("c", "h")
    session.discards["e"] = {"b", "a"}
    session.thresholds = ChecklistThresholds(min_recall=0.9)
    p1 = save_session(session, tmp_path / "s1.json")
    p2 = save_session(load_session(p1), tmp_path / "s2.json")
    assert p1.read_bytes() == p2.read_bytes()


def test_loaded_session_reproduces_metrics_after_recompute(
    tmp_path, scored_corpus, scored_import, scored_fixture
):
    wb = make_workbench(scored_corpus, scored_import, scored_fixture)
    wb.set_categories(SCORED_ENTITY, SCORED_CATEGORIES)
    apply_scored_corrections(wb)
    expected = wb.export_report_bytes()

    path = wb.save(tmp_path / "session.json")
    reopened = Workbench(scored_corpus, scored_import, load_session(path))
    assert reopened.export_report_bytes() == expected


def test_truncated_file_is_refused(tmp_path, scored_workbench):
    path = scored_workbench.save(tmp_path / "s.json")
    blob = path.read_text(encoding="utf-8")
    path.write_text(blob[: len(blob) // 2], encoding="utf-8")
    before = scored_workbench.export_report_bytes()
    with pytest.raises(SessionError, match="cannot read|malformed"):
        load_session(path)
    assert scored_workbench.export_report_bytes() == before  # in-memory state untouched


def test_version_mismatch_is_explicit(tmp_path):
    session = ProjectSession("c", "h")
    path = save_session(session, tmp_path / "s.json")
    obj = json.loads(path.read_text(encoding="utf-8"))
    obj["schema_version"] = 99
    path.write_text(json.dumps(obj), encoding="utf-8")
    with pytest.raises(SessionError, match="schema_version"):
        load_session(path)


def test_missing_file_is_explicit(tmp_path):
    with pytest.raises(SessionError, match="not found"):
        load_session(tmp_path / "absent.json")


def test_save_leaves_no_temp_file(tmp_path, scored_workbench):
    path = scored_workbench.save(tmp_path / "s.json")
    assert path.exists()
    assert not list(tmp_path.glob("*.tmp"))
    json.loads(path.read_text(encoding="utf-8"))  # complete, parseable


def test_session_persists_discards_thresholds_and_corrections(tmp_path, scored_workbench):
    scored_workbench.set_discards(SCORED_ENTITY, ["Le", "de"])
    scored_workbench.set_thresholds(ChecklistThresholds(min_highlights=30, sequential=False))
    fp = scored_workbench.matches(SCORED_ENTITY, "FP")[0]
    scored_workbench.correct(fp.match_id)

    loaded = load_session(scored_workbench.save(tmp_path / "s.json"))
    assert loaded.discards[SCORED_ENTITY] == {"le", "de"}
    assert loaded.thresholds.min_highlights == 30
    assert loaded.thresholds.sequential is False
    assert loaded.ledger.has(fp.match_id)
    entry = loaded.ledger.get(fp.match_id)
    assert entry.highlight.start == fp.start
    assert entry.highlight.entity == SCORED_ENTITY
    cats = {c.category_id for c in loaded.categories[SCORED_ENTITY]}
    assert cats == {c["id"] for c in SCORED_CATEGORIES}


def test_stale_correction_is_inert_but_revivable(scored_workbench):
    fp = scored_workbench.matches(SCORED_ENTITY, "FP")[0]
    scored_workbench.correct(fp.match_id)
    _, with_corr = scored_workbench.entity_metrics(SCORED_ENTITY)
    assert with_corr.correction_count == 1

    # removing the category removes the match; the ledger entry goes dormant
    keep = [c for c in SCORED_CATEGORIES if c["id"] != fp.category_id]
    scored_workbench.set_categories(SCORED_ENTITY, keep)
    _, without = scored_workbench.entity_metrics(SCORED_ENTITY)
    assert without.correction_count == 0

    scored_workbench.set_categories(SCORED_ENTITY, SCORED_CATEGORIES)
    _, revived = scored_workbench.entity_metrics(SCORED_ENTITY)
    assert revived.correction_count == 1


def test_workbench_open_reads_files(scored_fixture):
    wb = Workbench.open(scored_fixture.corpus_dir, scored_fixture.highlights_path)
    assert SCORED_ENTITY in wb.entities()
    assert len(wb.corpus) == 12


def test_unknown_entity_raises(scored_workbench):
    from rulebench.session import UnknownEntityError

    with pytest.raises(UnknownEntityError):
        scored_workbench.entity_metrics("ghost")
    with pytest.raises(UnknownEntityError):
        scored_workbench.set_categories("ghost", [])
