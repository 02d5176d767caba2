"""rulebench: decide, per entity, whether rule-based extraction is feasible.

Workflow: load a corpus and expert-highlighted spans, explore per-entity
lexical statistics, build pattern categories against the highlights,
measure precision/recall with manual FP-to-TP corrections, and read a
four-criterion checklist verdict.
"""

from .analytics import (
    AnalyticsError,
    ConcordanceRow,
    HomogeneityScore,
    NgramExpansion,
    TermScore,
    concordance,
    frequent_terms,
    homogeneity,
    homogeneity_table,
    ngram_expansions,
)
from .corpus import (
    Corpus,
    CorpusError,
    Document,
    EntityCatalog,
    HighlightSpan,
    ImportResult,
    import_highlights,
    normalize_text,
    token_window,
    tokens_of,
)
from .decision import (
    ChecklistInputs,
    ChecklistResult,
    ChecklistThresholds,
    evaluate_checklist,
    render_checklist_table,
)
from .matching import (
    FP,
    TP,
    TP_CORR,
    CategoryPattern,
    MatcherError,
    MatchRecord,
    PatternError,
    SpacingProfile,
    TermExpression,
    compile_category,
    parse_gap_syntax,
    run_entity,
    spacing_profile,
    uncategorized_highlights,
)
from .metrics import (
    CategoryMetrics,
    CorrectionError,
    CorrectionLedger,
    EntityMetrics,
    MetricsError,
    RecallDistribution,
    category_metrics,
    entity_metrics,
    recall_distribution,
    wilson_interval,
)
from .session import (
    ProjectSession,
    SessionError,
    UnknownEntityError,
    UnknownMatchError,
    Workbench,
    load_session,
    save_session,
)

__version__ = "0.1.0"
