// Decision screen: recall-distribution donut (grey segment = highlights
// no category captures), the four-criterion checklist, and threshold
// editing.

import { bound, escapeAttr, escapeHtml } from "../render.js";
import type { ViewState } from "../state.js";
import type { ChecklistResponse, DistributionResponse, ThresholdsPayload } from "../types.js";

export interface DecisionData {
  distribution: DistributionResponse | null;
  checklist: ChecklistResponse | null;
  thresholds: ThresholdsPayload | null;
}

const SLICE_COLORS = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2", "#edc948"];
const UNCATEGORIZED_COLOR = "#b0b0b0";

function donutArc(cx: number, cy: number, r: number, from: number, to: number): string {
  // angles as fractions of a full turn, starting at 12 o'clock
  const a0 = 2 * Math.PI * (from - 0.25);
  const a1 = 2 * Math.PI * (to - 0.25);
  const x0 = cx + r * Math.cos(a0);
  const y0 = cy + r * Math.sin(a0);
  const x1 = cx + r * Math.cos(a1);
  const y1 = cy + r * Math.sin(a1);
  const large = to - from > 0.5 ? 1 : 0;
  return `M ${cx} ${cy} L ${x0.toFixed(3)} ${y0.toFixed(3)} A ${r} ${r} 0 ${large} 1 ${x1.toFixed(3)} ${y1.toFixed(3)} Z`;
}

function distributionChart(dist: DistributionResponse | null): string {
  if (!dist) {
    return `<section class="panel"><h2>Category recall</h2><p class="hint">Apply categories first.</p></section>`;
  }
  const segments: { label: string; share: number; display: number | null; color: string }[] = [];
  dist.slices.forEach((slice, i) => {
    segments.push({
      label: slice.label,
      share: slice.share,
      display: slice.share_display,
      color: SLICE_COLORS[i % SLICE_COLORS.length],
    });
  });
  segments.push({
    label: "uncategorized",
    share: dist.uncategorized_share,
    display: dist.uncategorized_share_display,
    color: UNCATEGORIZED_COLOR,
  });

  let cursor = 0;
  const paths = segments
    .filter((s) => s.share > 0)
    .map((s) => {
      const from = cursor;
      cursor += s.share;
      if (s.share >= 1) {
        return `<circle cx="90" cy="90" r="80" fill="${s.color}"><title>${escapeAttr(s.label)}</title></circle>`;
      }
      return `<path d="${donutArc(90, 90, 80, from, cursor)}" fill="${s.color}"><title>${escapeAttr(s.label)}</title></path>`;
    })
    .join("");
  const legend = segments
    .map(
      (s) => `
        <li><span class="swatch" style="background:${s.color}"></span>
            ${escapeHtml(s.label)} — share ${bound(s.display)}</li>`,
    )
    .join("");
  return `
    <section class="panel" id="distribution-panel">
      <h2>Category recall — ${escapeHtml(dist.entity)} (${bound(dist.total)} highlights)</h2>
      <div class="donut-row">
        <svg viewBox="0 0 180 180" width="180" height="180" role="img" aria-label="recall distribution">
          ${paths}
          <circle cx="90" cy="90" r="46" fill="white"></circle>
        </svg>
        <ul class="legend">${legend}</ul>
      </div>
    </section>`;
}

function checklistPanel(checklist: ChecklistResponse | null): string {
  if (!checklist) {
    return `<section class="panel"><h2>Checklist</h2><p class="hint">Select an entity.</p></section>`;
  }
  const rows = checklist.criteria
    .map(
      (c) => `
        <tr class="crit-${c.status.toLowerCase()}">
          <td>${escapeHtml(c.code)} — ${escapeHtml(c.label)}</td>
          <td class="num">${bound(c.value_display)}</td>
          <td class="num">&ge; ${bound(c.threshold)}</td>
          <td class="mark">${escapeHtml(c.mark)}</td>
          <td class="hint">${escapeHtml(c.note)}</td>
        </tr>`,
    )
    .join("");
  return `
    <section class="panel" id="checklist-panel">
      <h2>Decision checklist — ${escapeHtml(checklist.entity)}</h2>
      <table class="data">
        <thead><tr><th>criterion</th><th>value</th><th>threshold</th><th></th><th></th></tr></thead>
        <tbody>${rows}</tbody>
      </table>
      <p class="verdict verdict-${checklist.verdict.toLowerCase()}">${escapeHtml(checklist.verdict)}</p>
    </section>`;
}

function thresholdsForm(thresholds: ThresholdsPayload | null): string {
  if (!thresholds) return "";
  return `
    <section class="panel" id="thresholds-panel">
      <h2>Thresholds</h2>
      <form data-action="save-thresholds" class="inline-form">
        <label>highlights <input name="min_highlights" type="number" min="1" value="${thresholds.min_highlights}"></label>
        <label>homogeneity <input name="min_homogeneity" type="number" step="0.01" min="0" max="1" value="${thresholds.min_homogeneity}"></label>
        <label>recall <input name="min_recall" type="number" step="0.01" min="0" max="1" value="${thresholds.min_recall}"></label>
        <label>precision <input name="min_precision" type="number" step="0.01" min="0" max="1" value="${thresholds.min_precision}"></label>
        <label><input name="sequential" type="checkbox" ${thresholds.sequential ? "checked" : ""}> sequential</label>
        <button type="submit">Apply</button>
      </form>
    </section>`;
}

export function renderDecision(data: DecisionData, state: ViewState): string {
  if (!state.entity) {
    return `<div class="screen"><p class="hint">Select an entity on the exploration step first.</p></div>`;
  }
  return `
    <div class="screen" id="decision-screen">
      ${distributionChart(data.distribution)}
      ${checklistPanel(data.checklist)}
      ${thresholdsForm(data.thresholds)}
    </div>`;
}
