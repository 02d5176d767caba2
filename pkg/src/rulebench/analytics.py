"""Exploration-step statistics over the highlight store.

Three queries an annotator runs before building any pattern: a lexical
homogeneity score per entity (how repetitive is the highlighted
language), ranked term recommendations (a tf-idf variant whose document
unit is the per-entity highlight pool, plus n-gram expansions around a
seed term), and a keyword-in-context search over the whole corpus.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Collection, Iterable, Sequence

from .corpus import (
    Corpus,
    HighlightSpan,
    find_occurrences,
    normalize_text,
    token_window,
    tokens_of,
)

NOT_ANNOTATED = "Not annotated"


class AnalyticsError(Exception):
    """A statistic was requested for an entity it cannot be computed on."""


def _entity_pool(highlights: Iterable[HighlightSpan], entity: str) -> list[HighlightSpan]:
    pool = [h for h in highlights if h.entity == entity]
    if not pool:
        raise AnalyticsError(f"no highlights for entity {entity!r}")
    return pool


@dataclass(frozen=True)
class HomogeneityScore:
    entity: str
    total_tokens: int
    unique_tokens: int
    ratio: float      # (total - unique) / total, in [0, 1)
    steepness: float
    center: float
    score: float      # sigmoid of (ratio - center), in (0, 1)


def homogeneity(
    highlights: Iterable[HighlightSpan],
    entity: str,
    *,
    steepness: float = 10.0,
    center: float = 0.5,
) -> HomogeneityScore:
    """Duplicate-token ratio of the entity's pooled highlight text.

    All tokens of all highlights are pooled (repeated highlight strings
    count every time). The raw ratio is passed through a sigmoid centered
    on ``center`` so displayed scores spread over (0, 1) instead of
    bunching up; ``ratio == center`` maps to exactly 0.5.
    """
    pool = _entity_pool(highlights, entity)
    toks: list[str] = []
    for h in pool:
        toks.extend(tokens_of(h.surface))
    if not toks:
        raise AnalyticsError(f"highlights of entity {entity!r} contain no tokens")
    total, unique = len(toks), len(set(toks))
    ratio = (total - unique) / total
    score = 1.0 / (1.0 + math.exp(-steepness * (ratio - center)))
    return HomogeneityScore(entity, total, unique, ratio, steepness, center, score)


def homogeneity_table(
    highlights: Sequence[HighlightSpan], **kwargs
) -> list[HomogeneityScore]:
    """One score per entity that has at least one tokenizable highlight."""
    out = []
    for entity in sorted({h.entity for h in highlights}):
        try:
            out.append(homogeneity(highlights, entity, **kwargs))
        except AnalyticsError:
            continue
    return out


@dataclass(frozen=True)
class TermScore:
    term: str
    tf: float     # occurrences of term / all token occurrences of the entity
    idf: float    # ln(number of entities / entities containing the term)
    score: float  # tf * idf
    count: int    # raw occurrences in the entity's highlights


def frequent_terms(
    highlights: Sequence[HighlightSpan],
    entity: str,
    discarded: Collection[str] = (),
    top_k: int | None = 10,
) -> list[TermScore]:
    """Recommended terms for an entity, ranked by tf-idf.

    The "document" unit is the highlight pool of each entity, so the idf
    factor rewards terms specific to this entity. A term present in every
    entity's highlights scores 0 and sorts last. Discarded terms are
    removed from candidacy only; they still count in the tf denominator,
    so discarding simply surfaces the next term in the ranking.
    """
    pool = _entity_pool(highlights, entity)
    counts = Counter(tok for h in pool for tok in tokens_of(h.surface))
    if not counts:
        raise AnalyticsError(f"highlights of entity {entity!r} contain no tokens")
    total = sum(counts.values())

    tokens_by_entity: dict[str, set[str]] = defaultdict(set)
    for h in highlights:
        tokens_by_entity[h.entity].update(tokens_of(h.surface))
    n_entities = len(tokens_by_entity)
    containing: Counter[str] = Counter()
    for toks in tokens_by_entity.values():
        containing.update(toks)

    drop = {normalize_text(t).strip() for t in discarded}
    scored = []
    for term, count in counts.items():
        if term in drop:
            continue
        tf = count / total
        idf = math.log(n_entities / containing[term])
        scored.append(TermScore(term, tf, idf, tf * idf, count))
    scored.sort(key=lambda t: (-t.score, -t.count, t.term))
    return scored if top_k is None else scored[:top_k]


@dataclass(frozen=True)
class NgramExpansion:
    tokens: tuple[str, ...]
    count: int

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def ngram_expansions(
    highlights: Sequence[HighlightSpan],
    entity: str,
    seed_term: str,
    top_m: int = 5,
    max_n: int = 4,
) -> list[NgramExpansion]:
    """Most frequent token n-grams (2..max_n) around a recommended term.

    N-grams are counted inside single highlights only and must contain
    ``seed_term`` as one of their tokens. Ties break toward shorter
    n-grams, then lexicographically.
    """
    pool = _entity_pool(highlights, entity)
    seed = normalize_text(seed_term).strip()
    counts: Counter[tuple[str, ...]] = Counter()
    seed_seen = False
    for h in pool:
        toks = tokens_of(h.surface)
        if seed in toks:
            seed_seen = True
        for n in range(2, max_n + 1):
            for i in range(len(toks) - n + 1):
                gram = tuple(toks[i:i + n])
                if seed in gram:
                    counts[gram] += 1
    if not seed_seen:
        raise AnalyticsError(
            f"term {seed_term!r} does not occur in highlights of {entity!r}"
        )
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], len(kv[0]), kv[0]))
    return [NgramExpansion(gram, count) for gram, count in ranked[:top_m]]


@dataclass(frozen=True)
class ConcordanceRow:
    doc_id: str
    start: int
    end: int
    before: str
    word: str
    after: str
    entity_label: str  # entity name, or NOT_ANNOTATED


def concordance(
    corpus: Corpus,
    highlights: Sequence[HighlightSpan],
    query: str,
    *,
    window_tokens: int = 8,
    whole_word: bool = False,
) -> list[ConcordanceRow]:
    """Keyword-in-context rows for every corpus occurrence of ``query``.

    A match is a substring occurrence beginning at a token boundary, so
    'tumeur' also surfaces 'tumeurs'. Each row is labeled with the entity
    of the first highlight (by span start) overlapping the match, or
    NOT_ANNOTATED. Rows are ordered by (doc_id, offset).
    """
    q = normalize_text(query).strip()
    if not q:
        raise ValueError("empty query")

    by_doc: dict[str, list[HighlightSpan]] = defaultdict(list)
    for h in highlights:
        by_doc[h.doc_id].append(h)
    for spans in by_doc.values():
        spans.sort(key=lambda h: (h.start, h.end, h.entity))

    rows = []
    for doc in corpus:
        doc_highlights = by_doc.get(doc.doc_id, [])
        for start, end in find_occurrences(doc, q, whole_word=whole_word):
            label = NOT_ANNOTATED
            for h in doc_highlights:
                if h.start >= end:
                    break
                if h.overlaps(start, end):
                    label = h.entity
                    break
            before, _ = token_window(doc, start, window_tokens, 0)
            _, after = token_window(doc, end, 0, window_tokens)
            rows.append(
                ConcordanceRow(
                    doc.doc_id, start, end, before, doc.norm_text[start:end], after, label
                )
            )
    return rows
