// Contract: the UI holds no computed numbers. Every metric rendered on
// any screen goes through bound(), which tags it with data-bound; this
// sweep verifies each tagged value exists verbatim in the API payloads
// the screen was rendered from.

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { MockServer, scalarSet } from "./mockServer.js";

const BOUND_RE = /data-bound="([^"]*)"/g;

function boundValues(html: string): string[] {
  return [...html.matchAll(BOUND_RE)].map((m) => m[1]);
}

async function renderAllScreens(): Promise<{ html: string[]; server: MockServer }> {
  const server = new MockServer();
  const screens: string[] = [];
  const app = new App(new ApiClient(server.fetchJson), (html) => screens.push(html));
  await app.selectEntity(server.fixtures.entity);
  app.state.concordanceQuery = "métastase";
  await app.showExploration();
  app.state.spacingProbe = { first: "atteinte", second: "métastatique", cap: 40 };
  await app.showInteraction();
  await app.showDecision();
  return { html: screens.slice(-3), server };
}

describe("metric binding", () => {
  it("every data-bound value on every screen exists in the API payloads", async () => {
    const { html, server } = await renderAllScreens();
    const allowed = scalarSet(server.fixtures.before);
    scalarSet(server.thresholds, allowed);

    let checked = 0;
    for (const screen of html) {
      for (const value of boundValues(screen)) {
        expect(allowed.has(value), `rendered value "${value}" not in any API field`).toBe(true);
        checked += 1;
      }
    }
    expect(checked).toBeGreaterThan(100); // the screens are full of bound metrics
  });

  it("screens render a substantial number of bound metrics each", async () => {
    const { html } = await renderAllScreens();
    const [exploration, interaction, decision] = html;
    expect(boundValues(exploration).length).toBeGreaterThan(5);
    expect(boundValues(interaction).length).toBeGreaterThan(30);
    expect(boundValues(decision).length).toBeGreaterThan(5);
  });
});
