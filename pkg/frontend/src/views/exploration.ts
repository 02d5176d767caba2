// Exploration screen: homogeneity table for all entities, recommended
// term chips with n-gram expansions and a discard control, and the
// concordancer.

import { bound, escapeAttr, escapeHtml } from "../render.js";
import type { ViewState } from "../state.js";
import type { ConcordanceResponse, EntitiesResponse, EntityRow, TermsResponse } from "../types.js";

export interface ExplorationData {
  entities: EntitiesResponse;
  terms: TermsResponse | null;
  concordance: ConcordanceResponse | null;
}

function sortRows(rows: EntityRow[], state: ViewState): EntityRow[] {
  const dir = state.sortDir;
  const key = state.sortKey;
  return [...rows].sort((a, b) => {
    if (key === "highlights") return dir * (a.total_highlights - b.total_highlights);
    if (key === "score") {
      const sa = a.homogeneity?.score ?? -1;
      const sb = b.homogeneity?.score ?? -1;
      return dir * (sa - sb);
    }
    return dir * a.entity.localeCompare(b.entity);
  });
}

function homogeneityTable(data: EntitiesResponse, state: ViewState): string {
  const rows = sortRows(data.entities, state)
    .map((row) => {
      const selected = row.entity === state.entity ? " selected" : "";
      return `
        <tr class="entity-row${selected}" data-action="select-entity" data-entity="${escapeAttr(row.entity)}">
          <td>${escapeHtml(row.entity)}</td>
          <td class="num">${bound(row.total_highlights)}</td>
          <td class="num">${bound(row.homogeneity?.score_display ?? null)}</td>
        </tr>`;
    })
    .join("");
  return `
    <section class="panel" id="homogeneity-panel">
      <h2>Entity highlights and homogeneity</h2>
      <table class="data">
        <thead>
          <tr>
            <th data-action="sort" data-key="entity">entity</th>
            <th data-action="sort" data-key="highlights">highlights</th>
            <th data-action="sort" data-key="score">homogeneity</th>
          </tr>
        </thead>
        <tbody>${rows}</tbody>
      </table>
    </section>`;
}

function termChips(terms: TermsResponse | null, state: ViewState): string {
  if (!state.entity) {
    return `<section class="panel"><h2>Frequent terms</h2><p class="hint">Select an entity above.</p></section>`;
  }
  if (!terms) {
    return `<section class="panel"><h2>Frequent terms</h2><p class="hint">Loading…</p></section>`;
  }
  const chips = terms.terms
    .map((term) => {
      const grams = term.ngrams
        .map(
          (g) => `
            <li class="ngram" draggable="true" data-ngram="${escapeAttr(g.text)}">
              <span class="ngram-text">${escapeHtml(g.text)}</span>
              <span class="count">${bound(g.count)}</span>
            </li>`,
        )
        .join("");
      return `
        <div class="term-chip" data-term="${escapeAttr(term.term)}">
          <div class="term-head">
            <span class="term-name" draggable="true" data-ngram="${escapeAttr(term.term)}">${escapeHtml(term.term)}</span>
            <span class="term-score">score ${bound(term.score_display)}, n=${bound(term.count)}</span>
            <button data-action="discard-term" data-term="${escapeAttr(term.term)}" title="discard and show the next term">×</button>
          </div>
          <ul class="ngrams">${grams}</ul>
        </div>`;
    })
    .join("");
  const discards = state.discards.length
    ? `<p class="hint">discarded: ${state.discards.map(escapeHtml).join(", ")}
         <button data-action="clear-discards">reset</button></p>`
    : "";
  return `
    <section class="panel" id="terms-panel">
      <h2>Frequent terms — ${escapeHtml(state.entity)}</h2>
      ${discards}
      <div class="chips">${chips || '<p class="hint">No terms.</p>'}</div>
    </section>`;
}

function concordancer(result: ConcordanceResponse | null, state: ViewState): string {
  const rows = (result?.rows ?? [])
    .map(
      (row) => `
        <tr>
          <td class="ctx before">${escapeHtml(row.before)}</td>
          <td class="kw">${escapeHtml(row.word)}</td>
          <td class="ctx after">${escapeHtml(row.after)}</td>
          <td>${escapeHtml(row.entity)}</td>
        </tr>`,
    )
    .join("");
  const body = result
    ? `<table class="data kwic">
         <thead><tr><th>words before</th><th>word</th><th>words after</th><th>entity</th></tr></thead>
         <tbody>${rows || '<tr><td colspan="4" class="hint">No match.</td></tr>'}</tbody>
       </table>`
    : "";
  return `
    <section class="panel" id="concordancer-panel">
      <h2>Concordancer</h2>
      <form data-action="concordance-search" class="inline-form">
        <label>Word: <input name="q" value="${escapeAttr(state.concordanceQuery)}" placeholder="tumeur"></label>
        <button type="submit">Search</button>
      </form>
      ${body}
    </section>`;
}

export function renderExploration(data: ExplorationData, state: ViewState): string {
  return `
    <div class="screen" id="exploration-screen">
      ${homogeneityTable(data.entities, state)}
      ${termChips(data.terms, state)}
      ${concordancer(data.concordance, state)}
    </div>`;
}
