"""HTTP facade over a Workbench session.

Single-session service meant to run on loopback for one user. Every
mutating endpoint is applied under the workbench's writer lock and, when
a session path is configured, persisted before the response is sent.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import reports
from .analytics import AnalyticsError
from .decision import ChecklistThresholds
from .matching import PatternError, category_to_json
from .metrics import CorrectionError, MetricsError
from .session import UnknownEntityError, UnknownMatchError, Workbench


class GapExpressionIn(BaseModel):
    segments: list[str] = Field(min_length=2)
    gaps: list[int]


class CategoryIn(BaseModel):
    id: str = Field(min_length=1)
    label: Optional[str] = None
    terms: list[str] = Field(default_factory=list)
    gap_expressions: list[GapExpressionIn] = Field(default_factory=list)
    regexes: list[str] = Field(default_factory=list)
    banwords: list[str] = Field(default_factory=list)


class CategoriesIn(BaseModel):
    categories: list[CategoryIn]


class ThresholdsIn(BaseModel):
    min_highlights: int = Field(default=25, ge=1)
    min_homogeneity: float = Field(default=0.10, ge=0.0, le=1.0)
    min_recall: float = Field(default=0.75, ge=0.0, le=1.0)
    min_precision: float = Field(default=0.75, ge=0.0, le=1.0)
    sequential: bool = True


class DiscardsIn(BaseModel):
    terms: list[str]


def _split_csv(raw: Optional[str]) -> list[str]:
    if not raw:
        return []
    return [part for part in (p.strip() for p in raw.split(",")) if part]


def create_app(
    workbench: Workbench,
    *,
    session_path=None,
    static_dir=None,
) -> FastAPI:
    app = FastAPI(title="rulebench", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def persist() -> None:
        if session_path is not None:
            workbench.save(session_path)

    @app.exception_handler(UnknownEntityError)
    @app.exception_handler(UnknownMatchError)
    async def _not_found(_, exc):  # safety net; endpoints map these themselves
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    def http_error(exc: Exception, status: int) -> HTTPException:
        return HTTPException(status_code=status, detail=str(exc))

    @app.get("/api/entities")
    def entities():
        try:
            return {"entities": workbench.entity_overview()}
        except (UnknownEntityError,) as exc:
            raise http_error(exc, 404)

    @app.get("/api/entities/{entity}/terms")
    def terms(
        entity: str,
        discard: Optional[str] = None,
        top: int = Query(default=10, ge=1, le=100),
        expansions: int = Query(default=5, ge=0, le=50),
    ):
        try:
            rows = workbench.terms(entity, _split_csv(discard), top_k=top, expansions=expansions)
        except UnknownEntityError as exc:
            raise http_error(exc, 404)
        except AnalyticsError as exc:
            raise http_error(exc, 409)
        return {"entity": entity, "terms": rows}

    @app.put("/api/entities/{entity}/discards")
    def put_discards(entity: str, payload: DiscardsIn):
        try:
            stored = workbench.set_discards(entity, payload.terms)
        except UnknownEntityError as exc:
            raise http_error(exc, 404)
        persist()
        return {"entity": entity, "discards": stored}

    @app.get("/api/concordance")
    def concordance_rows(
        q: str,
        window: int = Query(default=8, ge=0, le=50),
        whole_word: bool = False,
    ):
        try:
            rows = workbench.concordance(q, window_tokens=window, whole_word=whole_word)
        except ValueError as exc:
            raise http_error(exc, 422)
        return {
            "query": q,
            "rows": [
                {
                    "doc_id": r.doc_id,
                    "start": r.start,
                    "end": r.end,
                    "before": r.before,
                    "word": r.word,
                    "after": r.after,
                    "entity": r.entity_label,
                }
                for r in rows
            ],
        }

    @app.get("/api/entities/{entity}/categories")
    def get_categories(entity: str):
        try:
            cats = workbench.get_categories(entity)
        except UnknownEntityError as exc:
            raise http_error(exc, 404)
        return {"entity": entity, "categories": [category_to_json(c) for c in cats]}

    @app.put("/api/entities/{entity}/categories")
    def put_categories(entity: str, payload: CategoriesIn):
        try:
            cats = workbench.set_categories(
                entity, [c.model_dump() for c in payload.categories]
            )
        except UnknownEntityError as exc:
            raise http_error(exc, 404)
        except PatternError as exc:
            raise http_error(exc, 422)
        persist()
        return {"entity": entity, "categories": [category_to_json(c) for c in cats]}

    @app.get("/api/entities/{entity}/uncategorized")
    def uncategorized(entity: str):
        try:
            groups = workbench.uncategorized(entity)
        except UnknownEntityError as exc:
            raise http_error(exc, 404)
        return {
            "entity": entity,
            "groups": [{"text": surface, "occurrences": count} for surface, count in groups],
        }

    @app.get("/api/entities/{entity}/spacing")
    def spacing(
        entity: str,
        first: str,
        second: str,
        cap: int = Query(default=200, ge=0, le=10000),
    ):
        try:
            profile = workbench.spacing(entity, first, second, gap_cap=cap)
        except UnknownEntityError as exc:
            raise http_error(exc, 404)
        except ValueError as exc:
            raise http_error(exc, 422)
        return reports.spacing_payload(profile)

    @app.get("/api/entities/{entity}/metrics")
    def entity_metrics(entity: str):
        try:
            cat_rows, entity_row = workbench.entity_metrics(entity)
        except UnknownEntityError as exc:
            raise http_error(exc, 404)
        except MetricsError as exc:
            raise http_error(exc, 409)
        return {
            "entity": entity,
            "categories": [reports.category_metrics_payload(c) for c in cat_rows],
            "entity_metrics": reports.entity_metrics_payload(entity_row),
        }

    @app.get("/api/entities/{entity}/matches")
    def matches(
        entity: str,
        classification: Optional[str] = Query(default=None, alias="class"),
        window: int = Query(default=8, ge=0, le=50),
    ):
        try:
            records = workbench.matches(entity, classification)
        except UnknownEntityError as exc:
            raise http_error(exc, 404)
        rows = []
        for record in records:
            before, after = workbench.match_context(record, window_tokens=window)
            label = next(
                (c.label for c in workbench.get_categories(entity) if c.category_id == record.category_id),
                record.category_id,
            )
            payload = reports.match_payload(record, before, after)
            payload["category_label"] = label
            rows.append(payload)
        return {"entity": entity, "matches": rows}

    @app.post("/api/matches/{match_id}/correct")
    def correct(match_id: str):
        try:
            entity = workbench.correct(match_id)
        except UnknownMatchError as exc:
            raise http_error(exc, 404)
        except CorrectionError as exc:
            raise http_error(exc, 409)
        persist()
        cat_rows, entity_row = workbench.entity_metrics(entity)
        return {
            "entity": entity,
            "categories": [reports.category_metrics_payload(c) for c in cat_rows],
            "entity_metrics": reports.entity_metrics_payload(entity_row),
        }

    @app.delete("/api/matches/{match_id}/correct")
    def undo_correct(match_id: str):
        try:
            entity = workbench.undo_correction(match_id)
        except CorrectionError as exc:
            raise http_error(exc, 404)
        persist()
        cat_rows, entity_row = workbench.entity_metrics(entity)
        return {
            "entity": entity,
            "categories": [reports.category_metrics_payload(c) for c in cat_rows],
            "entity_metrics": reports.entity_metrics_payload(entity_row),
        }

    @app.get("/api/entities/{entity}/recall-distribution")
    def recall_distribution(entity: str):
        try:
            dist = workbench.recall_distribution(entity)
        except UnknownEntityError as exc:
            raise http_error(exc, 404)
        except MetricsError as exc:
            raise http_error(exc, 409)
        return reports.distribution_payload(dist)

    @app.get("/api/entities/{entity}/checklist")
    def checklist(entity: str):
        try:
            result = workbench.checklist(entity)
        except UnknownEntityError as exc:
            raise http_error(exc, 404)
        return reports.checklist_payload(result)

    @app.get("/api/thresholds")
    def get_thresholds():
        return workbench.session.thresholds.to_json()

    @app.put("/api/thresholds")
    def put_thresholds(payload: ThresholdsIn):
        thresholds = ChecklistThresholds(
            min_highlights=payload.min_highlights,
            min_homogeneity=payload.min_homogeneity,
            min_recall=payload.min_recall,
            min_precision=payload.min_precision,
            sequential=payload.sequential,
        )
        workbench.set_thresholds(thresholds)
        persist()
        return thresholds.to_json()

    @app.post("/api/session/save")
    def save_session_endpoint():
        if session_path is None:
            raise HTTPException(status_code=409, detail="no session path configured")
        target = workbench.save(session_path)
        return {"saved": str(target)}

    @app.get("/api/report")
    def report():
        return workbench.export_report()

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
