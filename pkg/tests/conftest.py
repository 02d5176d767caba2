from __future__ import annotations

import pytest

from rulebench.corpus import Corpus, import_highlights
from rulebench.session import ProjectSession, Workbench

from fixturegen import (
    SCORED_CATEGORIES,
    SCORED_CONVERSIONS,
    SCORED_ENTITY,
    build_clinic,
    build_scored,
)


@pytest.fixture(scope="session")
def scored_fixture(tmp_path_factory):
    return build_scored(tmp_path_factory.mktemp("scored"))


@pytest.fixture(scope="session")
def clinic_fixture(tmp_path_factory):
    return build_clinic(tmp_path_factory.mktemp("clinic"))


@pytest.fixture(scope="session")
def scored_corpus(scored_fixture):
    return Corpus.load(scored_fixture.corpus_dir)


@pytest.fixture(scope="session")
def scored_import(scored_fixture, scored_corpus):
    return import_highlights(scored_fixture.highlights_path, scored_corpus)


@pytest.fixture(scope="session")
def clinic_corpus(clinic_fixture):
    return Corpus.load(clinic_fixture.corpus_dir)


@pytest.fixture(scope="session")
def clinic_import(clinic_fixture, clinic_corpus):
    return import_highlights(clinic_fixture.highlights_path, clinic_corpus)


def make_workbench(corpus, imported, fixture) -> Workbench:
    """Fresh workbench over already-loaded session-scoped data."""
    session = ProjectSession(str(fixture.corpus_dir), str(fixture.highlights_path))
    return Workbench(corpus, imported, session)


@pytest.fixture
def scored_workbench(scored_corpus, scored_import, scored_fixture):
    wb = make_workbench(scored_corpus, scored_import, scored_fixture)
    wb.set_categories(SCORED_ENTITY, SCORED_CATEGORIES)
    return wb


@pytest.fixture
def clinic_workbench(clinic_corpus, clinic_import, clinic_fixture):
    return make_workbench(clinic_corpus, clinic_import, clinic_fixture)


def apply_scored_corrections(wb: Workbench) -> int:
    """Convert the designed number of FPs per category; returns how many."""
    converted = 0
    fps = wb.matches(SCORED_ENTITY, "FP")
    for category_id, k in SCORED_CONVERSIONS.items():
        targets = [m for m in fps if m.category_id == category_id][:k]
        assert len(targets) == k, f"{category_id}: expected {k} convertible FPs"
        for record in targets:
            wb.correct(record.match_id)
            converted += 1
    return converted
