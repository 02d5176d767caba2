// Screen rendering against the recorded fixtures: the displayed tables
// bind the exact API fields, field for field.

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { renderDecision } from "../src/views/decision.js";
import { renderExploration } from "../src/views/exploration.js";
import { renderInteraction } from "../src/views/interaction.js";
import { initialState } from "../src/state.js";
import { MockServer } from "./mockServer.js";
import { escapeHtml } from "../src/render.js";

function freshApp(server: MockServer): { app: App; last: () => string } {
  const screens: string[] = [];
  const app = new App(new ApiClient(server.fetchJson), (html) => screens.push(html));
  return { app, last: () => screens[screens.length - 1] };
}

describe("exploration screen", () => {
  it("renders one homogeneity row per entity with the API score", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.showExploration();
    const html = last();
    for (const row of server.fixtures.before.entities.entities) {
      expect(html).toContain(`data-entity="${row.entity}"`);
      expect(html).toContain(`data-bound="${row.homogeneity.score_display}"`);
      expect(html).toContain(`data-bound="${row.total_highlights}"`);
    }
  });

  it("renders term chips with scores and draggable n-gram expansions", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    const html = last();
    const terms = server.fixtures.before.terms.terms;
    expect(terms.length).toBeGreaterThan(0);
    for (const term of terms) {
      expect(html).toContain(`data-term="${term.term}"`);
      for (const gram of term.ngrams) {
        expect(html).toContain(`draggable="true" data-ngram="${gram.text}"`);
      }
    }
    expect(html).toContain("data-action=\"discard-term\"");
  });

  it("discarding a term re-requests with the discard applied", async () => {
    const server = new MockServer();
    const { app } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    const top = server.fixtures.before.terms.terms[0].term;
    await app.discardTerm(top);
    expect(server.discards[server.fixtures.entity]).toEqual([top]);
    const termCalls = server.calls.filter((c) => c.includes("/terms"));
    expect(termCalls[termCalls.length - 1]).toContain(`discard=${encodeURIComponent(top)}`);
  });

  it("concordance rows carry before/word/after and the entity label", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    await app.searchConcordance("métastase");
    const html = last();
    const row = server.fixtures.before.concordance.rows[0];
    expect(html).toContain(`<td class="kw">${row.word}</td>`);
    expect(html).toContain(row.entity);
  });

  it("sorting by score reorders rows without changing their values", () => {
    const mkRow = (entity: string, score: number) => ({
      entity,
      highlights: 1,
      corrections: 0,
      total_highlights: 1,
      homogeneity: {
        entity,
        total_tokens: 2,
        unique_tokens: 1,
        ratio: 0.5,
        score,
        score_display: score,
      },
      has_categories: false,
    });
    const entities = { entities: [mkRow("aaa", 0.9), mkRow("bbb", 0.1)] };
    const state = { ...initialState(), sortKey: "score" as const, sortDir: 1 as const };
    const asc = renderExploration({ entities, terms: null, concordance: null }, state);
    const desc = renderExploration(
      { entities, terms: null, concordance: null },
      { ...state, sortDir: -1 as const },
    );
    expect(asc.indexOf('data-entity="bbb"')).toBeLessThan(asc.indexOf('data-entity="aaa"'));
    expect(desc.indexOf('data-entity="aaa"')).toBeLessThan(desc.indexOf('data-entity="bbb"'));
  });

  it("setSort toggles direction on repeated clicks", async () => {
    const server = new MockServer();
    const { app } = freshApp(server);
    await app.setSort("score");
    expect(app.state.sortDir).toBe(1);
    await app.setSort("score");
    expect(app.state.sortDir).toBe(-1);
  });
});

describe("interaction screen", () => {
  it("starts with seven category slots plus the banwords slot", () => {
    const html = renderInteraction(
      { metrics: null, uncategorized: null, fpMatches: null, spacing: null },
      { ...initialState(), entity: "e" },
    );
    expect((html.match(/Category \d+:/g) ?? []).length).toBe(7);
    expect(html).toContain("Banwords:");
  });

  it("renders the raw and corrected category metric blocks verbatim", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    await app.showInteraction();
    const html = last();
    for (const row of server.fixtures.before.metrics.categories) {
      expect(html).toContain(escapeHtml(row.label));
      expect(html).toContain(`data-bound="${row.raw.tp}"`);
      expect(html).toContain(`data-bound="${row.corrected.tp}"`);
    }
    const em = server.fixtures.before.metrics.entity_metrics;
    expect(html).toContain(`data-bound="${em.precision_display}"`);
    expect(html).toContain(`data-bound="${em.precision_ci_display[0]}"`);
    expect(html).toContain(`data-bound="${em.recall_ci_display[1]}"`);
    expect(html).toContain(em.ci_method);
  });

  it("lists uncategorized highlight groups with occurrence counts", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    await app.showInteraction();
    const group = server.fixtures.before.uncategorized.groups[0];
    expect(last()).toContain(group.text);
  });

  it("FP review rows include context and the convert control", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    await app.showInteraction();
    const html = last();
    const fp = server.fixtures.before.matchesFP.matches[0];
    expect(html).toContain(`data-match="${fp.match_id}"`);
    expect(html).toContain("Consider this FP as a TP");
    expect(html).toContain(`<b class="kw">${fp.surface}</b>`);
  });

  it("spacing probe renders the cumulative TP/FP rows", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    await app.probeSpacing("atteinte", "métastatique", 40);
    const html = last();
    for (const row of server.fixtures.before.spacing.rows) {
      expect(html).toContain(`data-bound="${row.gap}"`);
    }
  });

  it("submitting slots PUTs the documented category format", async () => {
    const server = new MockServer();
    const { app } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    app.state.slots = [
      { text: "métastase, métastatique" },
      { text: "large cell ...15 carcinoma" },
      { text: "/pt\\d+/" },
    ];
    app.state.banwords = "antécédents familiaux";
    await app.submitCategories();
    expect(server.calls).toContain(
      `PUT /api/entities/${encodeURIComponent(server.fixtures.entity)}/categories`,
    );
  });
});

describe("decision screen", () => {
  it("renders the donut with a grey uncategorized segment and shares", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    await app.showDecision();
    const html = last();
    const dist = server.fixtures.before.distribution;
    expect(html).toContain("#b0b0b0"); // the uncategorized segment color
    expect(html).toContain(`data-bound="${dist.uncategorized_share_display}"`);
    for (const slice of dist.slices) {
      expect(html).toContain(escapeHtml(slice.label));
    }
  });

  it("renders checklist marks and verdict from the API", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    await app.showDecision();
    const html = last();
    const checklist = server.fixtures.before.checklist;
    expect(html).toContain(checklist.verdict);
    for (const criterion of checklist.criteria) {
      expect(html).toContain(`${criterion.code} — ${criterion.label}`);
      expect(html).toContain(`class="mark">${criterion.mark}</td>`);
    }
  });

  it("threshold edits round-trip through PUT and re-render", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.selectEntity(server.fixtures.entity);
    await app.showDecision();
    await app.saveThresholds({
      min_highlights: 30,
      min_homogeneity: 0.2,
      min_recall: 0.9,
      min_precision: 0.9,
      sequential: false,
    });
    expect(server.thresholds.min_recall).toBe(0.9);
    expect(last()).toContain('value="30"');
  });

  it("decision without categories shows the donut placeholder", () => {
    const html = renderDecision(
      { distribution: null, checklist: null, thresholds: null },
      { ...initialState(), entity: "e" },
    );
    expect(html).toContain("Apply categories first.");
  });
});

describe("empty states", () => {
  it("exploration renders without a selected entity", async () => {
    const server = new MockServer();
    const { app, last } = freshApp(server);
    await app.showExploration();
    expect(last()).toContain("Select an entity");
  });

  it("interaction renders without a selected entity", () => {
    const html = renderInteraction(
      { metrics: null, uncategorized: null, fpMatches: null, spacing: null },
      initialState(),
    );
    expect(html).toContain("Select an entity");
  });

  it("escapes markup in API strings", () => {
    const html = renderExploration(
      {
        entities: {
          entities: [
            {
              entity: "<script>x</script>",
              highlights: 1,
              corrections: 0,
              total_highlights: 1,
              homogeneity: null,
              has_categories: false,
            },
          ],
        },
        terms: null,
        concordance: null,
      },
      initialState(),
    );
    expect(html).not.toContain("<script>x</script>");
    expect(html).toContain("&lt;script&gt;");
  });
});
