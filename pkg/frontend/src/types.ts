// Payload shapes of the workbench HTTP API. The UI never computes metric
// values of its own: everything rendered comes from these fields verbatim.

export interface HomogeneityPayload {
  entity: string;
  total_tokens: number;
  unique_tokens: number;
  ratio: number;
  score: number;
  score_display: number | null;
}

export interface EntityRow {
  entity: string;
  highlights: number;
  corrections: number;
  total_highlights: number;
  homogeneity: HomogeneityPayload | null;
  has_categories: boolean;
}

export interface EntitiesResponse {
  entities: EntityRow[];
}

export interface NgramPayload {
  tokens: string[];
  text: string;
  count: number;
}

export interface TermPayload {
  term: string;
  count: number;
  tf: number;
  idf: number;
  score: number;
  score_display: number | null;
  ngrams: NgramPayload[];
}

export interface TermsResponse {
  entity: string;
  terms: TermPayload[];
}

export interface ConcordanceRowPayload {
  doc_id: string;
  start: number;
  end: number;
  before: string;
  word: string;
  after: string;
  entity: string;
}

export interface ConcordanceResponse {
  query: string;
  rows: ConcordanceRowPayload[];
}

export interface GapExpressionPayload {
  segments: string[];
  gaps: number[];
}

export interface CategoryPayload {
  id: string;
  label: string;
  terms: string[];
  gap_expressions: GapExpressionPayload[];
  regexes: string[];
  banwords: string[];
}

export interface CategoriesResponse {
  entity: string;
  categories: CategoryPayload[];
}

export interface CountBlockPayload {
  tp: number;
  fp: number;
  fn: number;
  precision: number | null;
  precision_display: number | null;
}

export interface CategoryMetricsPayload {
  category_id: string;
  label: string;
  raw: CountBlockPayload;
  corrected: CountBlockPayload;
}

export interface EntityMetricsPayload {
  entity: string;
  homogeneity: number | null;
  homogeneity_display: number | null;
  tp: number;
  fp: number;
  fn: number;
  precision: number | null;
  precision_display: number | null;
  precision_ci: [number, number] | null;
  precision_ci_display: [number, number] | null;
  recall: number;
  recall_display: number | null;
  recall_ci: [number, number] | null;
  recall_ci_display: [number, number] | null;
  ci_method: string;
  gold_highlights: number;
  caught_highlights: number;
  includes_corrections: number;
}

export interface MetricsResponse {
  entity: string;
  categories: CategoryMetricsPayload[];
  entity_metrics: EntityMetricsPayload;
}

export interface MatchPayload {
  match_id: string;
  doc_id: string;
  start: number;
  end: number;
  surface: string;
  category_id: string;
  expression_index: number;
  classification: string;
  classification_display: string;
  before: string;
  after: string;
  category_label: string;
}

export interface MatchesResponse {
  entity: string;
  matches: MatchPayload[];
}

export interface UncategorizedGroup {
  text: string;
  occurrences: number;
}

export interface UncategorizedResponse {
  entity: string;
  groups: UncategorizedGroup[];
}

export interface SpacingRowPayload {
  gap: number;
  tp: number;
  fp: number;
}

export interface SpacingResponse {
  entity: string;
  first: string;
  second: string;
  rows: SpacingRowPayload[];
}

export interface DistributionSlice {
  category_id: string;
  label: string;
  caught: number;
  share: number;
  share_display: number | null;
}

export interface DistributionResponse {
  entity: string;
  total: number;
  slices: DistributionSlice[];
  uncategorized: number;
  uncategorized_share: number;
  uncategorized_share_display: number | null;
}

export interface CriterionPayload {
  code: string;
  label: string;
  value: number | null;
  value_display: number | null;
  threshold: number;
  status: string;
  mark: string;
  note: string;
}

export interface ChecklistResponse {
  entity: string;
  verdict: string;
  criteria: CriterionPayload[];
}

export interface ThresholdsPayload {
  min_highlights: number;
  min_homogeneity: number;
  min_recall: number;
  min_precision: number;
  sequential: boolean;
}

export interface SaveResponse {
  saved: string;
}

export interface CorrectResponse {
  entity: string;
  categories: CategoryMetricsPayload[];
  entity_metrics: EntityMetricsPayload;
}
