"""Project persistence and the workbench that ties everything together.

A ProjectSession is the durable state of one analysis project: where the
corpus and highlight file live, the categories built per entity, the
correction ledger, discarded terms, and the checklist thresholds. It
serializes to a single JSON document; saves are write-temp-then-rename
so a crash can never leave a half-written file.

The Workbench owns the loaded corpus plus one session and serves every
query the HTTP API (or the CLI report) needs, under a single-writer
lock. Derived results are cached per state version and recomputed after
any mutation. Correction-added highlights feed back into the gold store
and the analytics; payloads carry an ``includes_corrections`` count so
that feedback is visible.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import analytics, matching, metrics, reports
from .analytics import AnalyticsError, HomogeneityScore
from .corpus import (
    Corpus,
    CorpusError,
    EntityCatalog,
    HighlightSpan,
    ImportResult,
    import_highlights,
    normalize_text,
    token_window,
)
from .decision import ChecklistInputs, ChecklistResult, ChecklistThresholds, evaluate_checklist
from .matching import FP, CategoryPattern, MatchRecord, category_from_json, category_to_json
from .metrics import (
    CategoryMetrics,
    CorrectionEntry,
    CorrectionError,
    CorrectionLedger,
    EntityMetrics,
)

SCHEMA_VERSION = 1


class SessionError(Exception):
    """Session file cannot be read, parsed or migrated."""


class UnknownEntityError(Exception):
    pass


class UnknownMatchError(Exception):
    pass


def _highlight_to_json(h: HighlightSpan) -> dict:
    return {"doc": h.doc_id, "entity": h.entity, "start": h.start, "end": h.end, "text": h.surface}


def _highlight_from_json(obj: dict) -> HighlightSpan:
    return HighlightSpan(obj["doc"], obj["entity"], obj["start"], obj["end"], obj["text"])


@dataclass
class ProjectSession:
    """Serializable state of one analysis project."""

    corpus_path: str
    highlights_path: str
    session_id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    categories: dict[str, list[CategoryPattern]] = field(default_factory=dict)
    ledger: CorrectionLedger = field(default_factory=CorrectionLedger)
    discards: dict[str, set[str]] = field(default_factory=dict)
    thresholds: ChecklistThresholds = field(default_factory=ChecklistThresholds)
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "session_id": self.session_id,
            "corpus_path": self.corpus_path,
            "highlights_path": self.highlights_path,
            "thresholds": self.thresholds.to_json(),
            "discards": {e: sorted(terms) for e, terms in sorted(self.discards.items()) if terms},
            "categories": {
                e: [category_to_json(c) for c in cats]
                for e, cats in sorted(self.categories.items())
                if cats
            },
            "corrections": [
                {
                    "match_id": e.match_id,
                    "converted_at": e.converted_at,
                    "highlight": _highlight_to_json(e.highlight),
                }
                for e in self.ledger
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ProjectSession":
        version = obj.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SessionError(
                f"unsupported schema_version {version!r} (this build reads {SCHEMA_VERSION}); migrate the file first"
            )
        try:
            categories = {
                entity: [category_from_json(entity, c) for c in cats]
                for entity, cats in obj.get("categories", {}).items()
            }
            ledger = CorrectionLedger(
                CorrectionEntry(c["match_id"], c["converted_at"], _highlight_from_json(c["highlight"]))
                for c in obj.get("corrections", [])
            )
            return cls(
                corpus_path=obj["corpus_path"],
                highlights_path=obj["highlights_path"],
                session_id=obj.get("session_id", uuid.uuid4().hex[:12]),
                categories=categories,
                ledger=ledger,
                discards={e: set(t) for e, t in obj.get("discards", {}).items()},
                thresholds=ChecklistThresholds.from_json(obj.get("thresholds", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SessionError(f"malformed session file: {exc}") from exc


def save_session(session: ProjectSession, path) -> Path:
    """Atomic write: the target is only ever replaced by a complete file."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    payload = json.dumps(session.to_json(), ensure_ascii=False, indent=2, sort_keys=True)
    tmp = target.with_name(target.name + ".tmp")
    tmp.write_text(payload + "\n", encoding="utf-8")
    os.replace(tmp, target)
    return target


def load_session(path) -> ProjectSession:
    target = Path(path)
    if not target.is_file():
        raise SessionError(f"session file not found: {target}")
    try:
        obj = json.loads(target.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SessionError(f"cannot read session file {target}: {exc}") from exc
    if not isinstance(obj, dict):
        raise SessionError(f"session file {target} is not a JSON object")
    return ProjectSession.from_json(obj)


@dataclass
class EntityBundle:
    """Everything derived for one entity at one state version."""

    entity: str
    categories: list[CategoryPattern]
    raw_matches: list[MatchRecord]
    corrected_matches: list[MatchRecord]
    gold: list[HighlightSpan]  # expert highlights + active correction highlights
    active_corrections: list[CorrectionEntry]


class Workbench:
    """One open project: loaded corpus, session state, derived metrics.

    Thread safety: multi-reader / single-writer collapsed to one re-entrant
    lock, which is plenty for a single-user tool; every public method takes
    it. Mutations bump a version counter that invalidates derived caches.
    """

    def __init__(
        self,
        corpus: Corpus,
        imported: ImportResult,
        session: ProjectSession,
    ):
        self._lock = threading.RLock()
        self.corpus = corpus
        self.expert_highlights: list[HighlightSpan] = list(imported.highlights)
        self.catalog: EntityCatalog = imported.catalog
        self.import_rejects = list(imported.rejected)
        self.session = session
        self._version = 0
        self._bundles: dict[str, tuple[int, EntityBundle]] = {}

    @classmethod
    def open(
        cls,
        corpus_dir,
        highlights_path,
        session: Optional[ProjectSession] = None,
        *,
        strict: bool = False,
    ) -> "Workbench":
        corpus = Corpus.load(corpus_dir)
        imported = import_highlights(highlights_path, corpus)
        if strict and not imported.ok:
            first = imported.rejected[0]
            raise CorpusError(
                f"{len(imported.rejected)} highlight record(s) rejected; "
                f"first: line {first.line_no}: {first.reason}"
            )
        if session is None:
            session = ProjectSession(str(corpus_dir), str(highlights_path))
        return cls(corpus, imported, session)

    # -- state plumbing ----------------------------------------------------

    def _bump(self) -> None:
        self._version += 1

    def _require_entity(self, entity: str) -> None:
        if entity not in self.catalog:
            raise UnknownEntityError(f"unknown entity {entity!r}")

    def entities(self) -> list[str]:
        return self.catalog.entities

    def _bundle(self, entity: str) -> EntityBundle:
        with self._lock:
            cached = self._bundles.get(entity)
            if cached and cached[0] == self._version:
                return cached[1]
            self._require_entity(entity)
            cats = self.session.categories.get(entity, [])
            raw = matching.run_entity(self.corpus, entity, cats, self.expert_highlights)
            active = self.session.ledger.for_ids(m.match_id for m in raw)
            active = [e for e in active if e.highlight.entity == entity]
            if active:
                gold = self.expert_highlights + [e.highlight for e in active]
                corrected = matching.run_entity(
                    self.corpus, entity, cats, gold, {e.match_id for e in active}
                )
            else:
                gold = self.expert_highlights
                corrected = raw
            bundle = EntityBundle(entity, list(cats), raw, corrected, list(gold), active)
            self._bundles[entity] = (self._version, bundle)
            return bundle

    def _entity_gold(self, entity: str) -> list[HighlightSpan]:
        bundle = self._bundle(entity)
        return [h for h in bundle.gold if h.entity == entity]

    def current_highlights(self) -> list[HighlightSpan]:
        """Expert highlights plus every active correction highlight."""
        with self._lock:
            extra = []
            for entity, cats in self.session.categories.items():
                if cats and entity in self.catalog:
                    extra.extend(e.highlight for e in self._bundle(entity).active_corrections)
            return self.expert_highlights + extra

    # -- exploration -------------------------------------------------------

    def homogeneity(self, entity: str) -> HomogeneityScore:
        with self._lock:
            self._require_entity(entity)
            return analytics.homogeneity(self.current_highlights(), entity)

    def entity_overview(self) -> list[dict]:
        """One row per entity: counts plus homogeneity, for the landing table."""
        with self._lock:
            highlights = self.current_highlights()
            scores = {s.entity: s for s in analytics.homogeneity_table(highlights)}
            rows = []
            for entity in self.entities():
                score = scores.get(entity)
                corrections = sum(1 for h in highlights if h.entity == entity) - self.catalog.count(entity)
                rows.append(
                    {
                        "entity": entity,
                        "highlights": self.catalog.count(entity),
                        "corrections": corrections,
                        "total_highlights": self.catalog.count(entity) + corrections,
                        "homogeneity": None if score is None else reports.homogeneity_payload(score),
                        "has_categories": bool(self.session.categories.get(entity)),
                    }
                )
            return rows

    def terms(
        self,
        entity: str,
        extra_discards: Sequence[str] = (),
        *,
        top_k: int = 10,
        expansions: int = 5,
        max_ngram: int = 4,
    ) -> list[dict]:
        with self._lock:
            self._require_entity(entity)
            highlights = self.current_highlights()
            discards = set(self.session.discards.get(entity, set()))
            discards.update(normalize_text(t).strip() for t in extra_discards)
            ranked = analytics.frequent_terms(highlights, entity, discards, top_k)
            out = []
            for term in ranked:
                grams = analytics.ngram_expansions(
                    highlights, entity, term.term, top_m=expansions, max_n=max_ngram
                )
                out.append(reports.term_payload(term, grams))
            return out

    def set_discards(self, entity: str, terms: Sequence[str]) -> list[str]:
        with self._lock:
            self._require_entity(entity)
            cleaned = {normalize_text(t).strip() for t in terms}
            cleaned.discard("")
            self.session.discards[entity] = cleaned
            self._bump()
            return sorted(cleaned)

    def concordance(
        self, query: str, window_tokens: int = 8, whole_word: bool = False
    ) -> list[analytics.ConcordanceRow]:
        with self._lock:
            return analytics.concordance(
                self.corpus,
                self.current_highlights(),
                query,
                window_tokens=window_tokens,
                whole_word=whole_word,
            )

    # -- interaction -------------------------------------------------------

    def get_categories(self, entity: str) -> list[CategoryPattern]:
        with self._lock:
            self._require_entity(entity)
            return list(self.session.categories.get(entity, []))

    def set_categories(self, entity: str, payload: Sequence[dict]) -> list[CategoryPattern]:
        """Replace the entity's category set from wire-format objects."""
        with self._lock:
            self._require_entity(entity)
            cats = [category_from_json(entity, obj) for obj in payload]
            seen = set()
            for cat in cats:
                if cat.category_id in seen:
                    raise matching.PatternError(f"duplicate category id {cat.category_id!r}")
                seen.add(cat.category_id)
                matching.compile_category(cat)  # surface compile errors before storing
            self.session.categories[entity] = cats
            self._bump()
            return cats

    def matches(self, entity: str, classification: Optional[str] = None) -> list[MatchRecord]:
        with self._lock:
            records = self._bundle(entity).corrected_matches
            if classification is None:
                return list(records)
            return [m for m in records if m.classification == classification]

    def match_context(self, record: MatchRecord, window_tokens: int = 8) -> tuple[str, str]:
        doc = self.corpus[record.doc_id]
        before, _ = token_window(doc, record.start, window_tokens, 0)
        _, after = token_window(doc, record.end, 0, window_tokens)
        return before, after

    def uncategorized(self, entity: str) -> list[tuple[str, int]]:
        with self._lock:
            bundle = self._bundle(entity)
            return matching.uncategorized_highlights(
                self.corpus, entity, bundle.categories, bundle.gold
            )

    def spacing(self, entity: str, first: str, second: str, gap_cap: int = 200) -> matching.SpacingProfile:
        with self._lock:
            bundle = self._bundle(entity)
            return matching.spacing_profile(
                self.corpus, entity, first, second, bundle.gold, gap_cap=gap_cap
            )

    def entity_metrics(self, entity: str) -> tuple[list[CategoryMetrics], EntityMetrics]:
        with self._lock:
            bundle = self._bundle(entity)
            cat_rows = metrics.category_metrics(
                bundle.categories, bundle.raw_matches, bundle.corrected_matches
            )
            try:
                hom = analytics.homogeneity(bundle.gold, entity).score
            except AnalyticsError:
                hom = None
            entity_row = metrics.entity_metrics(
                entity,
                bundle.corrected_matches,
                bundle.gold,
                homogeneity=hom,
                correction_count=len(bundle.active_corrections),
            )
            return cat_rows, entity_row

    def find_match(self, match_id: str) -> Optional[tuple[str, MatchRecord]]:
        """Locate a match id among the current matches of any entity."""
        with self._lock:
            for entity, cats in self.session.categories.items():
                if not cats or entity not in self.catalog:
                    continue
                for record in self._bundle(entity).corrected_matches:
                    if record.match_id == match_id:
                        return entity, record
            return None

    def correct(self, match_id: str) -> str:
        """Convert a false positive to a true positive; returns its entity."""
        with self._lock:
            found = self.find_match(match_id)
            if found is None:
                raise UnknownMatchError(f"unknown match {match_id!r}")
            entity, record = found
            if self.session.ledger.has(match_id):
                raise CorrectionError(f"match {match_id!r} was already converted")
            if record.classification != FP:
                raise CorrectionError(
                    f"match {match_id!r} is {record.classification}, not FP"
                )
            highlight = HighlightSpan(
                record.doc_id, entity, record.start, record.end, record.surface
            )
            self.session.ledger.add(match_id, highlight)
            self._bump()
            return entity

    def undo_correction(self, match_id: str) -> str:
        with self._lock:
            entry = self.session.ledger.remove(match_id)  # raises CorrectionError if absent
            self._bump()
            return entry.highlight.entity

    # -- decision ----------------------------------------------------------

    def recall_distribution(self, entity: str) -> metrics.RecallDistribution:
        with self._lock:
            bundle = self._bundle(entity)
            return metrics.recall_distribution(
                entity, bundle.categories, bundle.corrected_matches, bundle.gold
            )

    def checklist(self, entity: str) -> ChecklistResult:
        with self._lock:
            self._require_entity(entity)
            gold = self._entity_gold(entity)
            try:
                hom = analytics.homogeneity(gold, entity).score
            except AnalyticsError:
                hom = None
            notes = {}
            recall = precision = None
            if self.session.categories.get(entity):
                _, em = self.entity_metrics(entity)
                recall = em.recall
                precision = em.precision
                if precision is None:
                    notes["EP"] = "no matches"
            else:
                notes["ER"] = "no categories"
                notes["EP"] = "no categories"
            if hom is None:
                notes["LH"] = "no score"
            inputs = ChecklistInputs(
                entity=entity,
                highlight_count=len(gold),
                homogeneity=hom,
                recall=recall,
                precision=precision,
                notes=notes,
            )
            return evaluate_checklist(inputs, self.session.thresholds)

    def set_thresholds(self, thresholds: ChecklistThresholds) -> ChecklistThresholds:
        with self._lock:
            self.session.thresholds = thresholds
            self._bump()
            return thresholds

    # -- persistence and export --------------------------------------------

    def save(self, path) -> Path:
        with self._lock:
            return save_session(self.session, path)

    def export_report(self) -> dict:
        """Full per-entity report: metric tables, distribution, checklist."""
        with self._lock:
            entities = []
            for entity in self.entities():
                cat_rows, entity_row = self.entity_metrics(entity)
                bundle = self._bundle(entity)
                try:
                    hom = reports.homogeneity_payload(
                        analytics.homogeneity(bundle.gold, entity)
                    )
                except AnalyticsError:
                    hom = None
                entities.append(
                    {
                        "entity": entity,
                        "highlights": {
                            "expert": self.catalog.count(entity),
                            "corrections": len(bundle.active_corrections),
                            "total": len(self._entity_gold(entity)),
                        },
                        "homogeneity": hom,
                        "categories": [reports.category_metrics_payload(c) for c in cat_rows],
                        "entity_metrics": reports.entity_metrics_payload(entity_row),
                        "recall_distribution": reports.distribution_payload(
                            self.recall_distribution(entity)
                        ),
                        "checklist": reports.checklist_payload(self.checklist(entity)),
                    }
                )
            return {
                "session_id": self.session.session_id,
                "ci_method": metrics.CI_METHOD,
                "thresholds": self.session.thresholds.to_json(),
                "entities": entities,
            }

    def export_report_bytes(self) -> bytes:
        return (
            json.dumps(self.export_report(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"
        ).encode("utf-8")
