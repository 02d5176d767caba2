// Interaction screen: category slots (typed or drag-and-drop), ban words,
// uncategorized highlights, the raw/corrected metric tables, an optional
// spacing probe, and the FP review list with the convert control.

import { bound, boundCi, escapeAttr, escapeHtml } from "../render.js";
import type { ViewState } from "../state.js";
import type {
  CategoryMetricsPayload,
  EntityMetricsPayload,
  MatchesResponse,
  MetricsResponse,
  SpacingResponse,
  UncategorizedResponse,
} from "../types.js";

export interface InteractionData {
  metrics: MetricsResponse | null;
  uncategorized: UncategorizedResponse | null;
  fpMatches: MatchesResponse | null;
  spacing: SpacingResponse | null;
}

function categorySlots(state: ViewState): string {
  const slots = state.slots
    .map(
      (slot, i) => `
        <div class="slot-row">
          <label>Category ${i + 1}:</label>
          <input class="slot" data-slot="${i}" value="${escapeAttr(slot.text)}"
                 placeholder="term, other term, large cell ...15 carcinoma, /rege?x/">
          <button data-action="remove-slot" data-slot="${i}" title="remove slot">−</button>
        </div>`,
    )
    .join("");
  return `
    <section class="panel" id="category-editor">
      <h2>Category creation — ${escapeHtml(state.entity ?? "")}</h2>
      <p class="hint">Type terms (comma-separated), drag n-grams from the exploration step,
         use "first ...15 second" for gapped expressions and /…/ for regexes.</p>
      ${slots}
      <div class="slot-row banwords">
        <label>Banwords:</label>
        <input class="slot" id="banwords" value="${escapeAttr(state.banwords)}" placeholder="antécédents familiaux">
      </div>
      <div class="slot-actions">
        <button data-action="add-slot">+ slot</button>
        <button data-action="submit-categories" class="primary">Apply categories</button>
      </div>
      <p id="category-error" class="error" hidden></p>
    </section>`;
}

function uncategorizedPanel(data: UncategorizedResponse | null): string {
  const rows = (data?.groups ?? [])
    .map(
      (g) => `
        <tr><td>${escapeHtml(g.text)}</td><td class="num">${bound(g.occurrences)}</td></tr>`,
    )
    .join("");
  return `
    <section class="panel" id="uncategorized-panel">
      <h2>Uncategorized highlights</h2>
      <table class="data">
        <thead><tr><th>text</th><th>occurrences</th></tr></thead>
        <tbody>${rows || '<tr><td colspan="2" class="hint">Everything is categorized.</td></tr>'}</tbody>
      </table>
    </section>`;
}

function categoryTable(categories: CategoryMetricsPayload[]): string {
  const rows = categories
    .map(
      (c) => `
        <tr>
          <td>${escapeHtml(c.label)}</td>
          <td class="num">${bound(c.raw.tp)}</td>
          <td class="num">${bound(c.raw.fp)}</td>
          <td class="num">${bound(c.raw.fn)}</td>
          <td class="num">${bound(c.raw.precision_display)}</td>
          <td class="num sep">${bound(c.corrected.tp)}</td>
          <td class="num">${bound(c.corrected.fp)}</td>
          <td class="num">${bound(c.corrected.fn)}</td>
          <td class="num">${bound(c.corrected.precision_display)}</td>
        </tr>`,
    )
    .join("");
  return `
    <table class="data" id="category-metrics">
      <thead>
        <tr>
          <th rowspan="2">category</th>
          <th colspan="4">raw highlights</th>
          <th colspan="4">corrected highlights</th>
        </tr>
        <tr>
          <th>TP</th><th>FP</th><th>FN</th><th>precision</th>
          <th class="sep">TP(corr)</th><th>FP(corr)</th><th>FN(corr)</th><th>precision</th>
        </tr>
      </thead>
      <tbody>${rows}</tbody>
    </table>`;
}

function entityTable(em: EntityMetricsPayload): string {
  return `
    <table class="data" id="entity-metrics">
      <thead>
        <tr><th>entity</th><th>homogeneity</th><th>TP</th><th>FP</th><th>FN</th>
            <th>precision</th><th>precision CI</th><th>recall</th><th>recall CI</th></tr>
      </thead>
      <tbody>
        <tr>
          <td>${escapeHtml(em.entity)}</td>
          <td class="num">${bound(em.homogeneity_display)}</td>
          <td class="num">${bound(em.tp)}</td>
          <td class="num">${bound(em.fp)}</td>
          <td class="num">${bound(em.fn)}</td>
          <td class="num">${bound(em.precision_display)}</td>
          <td class="num">${boundCi(em.precision_ci_display)}</td>
          <td class="num">${bound(em.recall_display)}</td>
          <td class="num">${boundCi(em.recall_ci_display)}</td>
        </tr>
      </tbody>
    </table>
    <p class="hint">intervals: ${escapeHtml(em.ci_method)}; corrections applied: ${bound(em.includes_corrections)}</p>`;
}

function metricsPanel(metrics: MetricsResponse | null): string {
  if (!metrics || !metrics.categories.length) {
    return `<section class="panel"><h2>Metrics</h2><p class="hint">Apply categories to see metrics.</p></section>`;
  }
  return `
    <section class="panel" id="metrics-panel">
      <h2>Category metrics</h2>
      ${categoryTable(metrics.categories)}
      <h2>Entity metrics</h2>
      ${entityTable(metrics.entity_metrics)}
    </section>`;
}

function spacingPanel(spacing: SpacingResponse | null, state: ViewState): string {
  const probe = state.spacingProbe;
  const rows = (spacing?.rows ?? [])
    .map(
      (r) => `
        <tr><td class="num">${bound(r.gap)}</td><td class="num">${bound(r.tp)}</td><td class="num">${bound(r.fp)}</td></tr>`,
    )
    .join("");
  const table = spacing
    ? `<table class="data" id="spacing-table">
         <thead><tr><th>max distance</th><th>cumulative TP</th><th>cumulative FP</th></tr></thead>
         <tbody>${rows || '<tr><td colspan="3" class="hint">No co-occurrence.</td></tr>'}</tbody>
       </table>`
    : "";
  return `
    <section class="panel" id="spacing-panel">
      <h2>Optimal spacing</h2>
      <form data-action="spacing-probe" class="inline-form">
        <label>first <input name="first" value="${escapeAttr(probe?.first ?? "")}"></label>
        <label>second <input name="second" value="${escapeAttr(probe?.second ?? "")}"></label>
        <label>cap <input name="cap" type="number" value="${probe?.cap ?? 200}" min="0"></label>
        <button type="submit">Probe</button>
      </form>
      ${table}
    </section>`;
}

function fpReview(matches: MatchesResponse | null): string {
  const rows = (matches?.matches ?? [])
    .map(
      (m) => `
        <tr>
          <td>${escapeHtml(m.category_label)}</td>
          <td>${escapeHtml(m.classification_display)}</td>
          <td class="ctx">${escapeHtml(m.before)}<b class="kw">${escapeHtml(m.surface)}</b>${escapeHtml(m.after)}</td>
          <td>${escapeHtml(m.doc_id)}</td>
          <td class="num">${bound(m.start)},${bound(m.end)}</td>
          <td><label class="convert">
                <input type="checkbox" data-action="convert-fp" data-match="${escapeAttr(m.match_id)}">
                Consider this FP as a TP
              </label></td>
        </tr>`,
    )
    .join("");
  return `
    <section class="panel" id="fp-review-panel">
      <h2>False-positive review</h2>
      <table class="data">
        <thead><tr><th>category</th><th>result</th><th>text</th><th>file</th><th>places</th><th></th></tr></thead>
        <tbody>${rows || '<tr><td colspan="6" class="hint">No false positives.</td></tr>'}</tbody>
      </table>
    </section>`;
}

export function renderInteraction(data: InteractionData, state: ViewState): string {
  if (!state.entity) {
    return `<div class="screen"><p class="hint">Select an entity on the exploration step first.</p></div>`;
  }
  return `
    <div class="screen" id="interaction-screen">
      ${categorySlots(state)}
      ${uncategorizedPanel(data.uncategorized)}
      ${metricsPanel(data.metrics)}
      ${spacingPanel(data.spacing, state)}
      ${fpReview(data.fpMatches)}
    </div>`;
}
