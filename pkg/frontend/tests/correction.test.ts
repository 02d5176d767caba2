// The FP -> TP control round-trips through POST /api/matches/{id}/correct
// and re-renders both metric tables from the acknowledged server state.

import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { App } from "../src/app.js";
import { MockServer } from "./mockServer.js";

describe("FP to TP correction", () => {
  it("converts, waits for the server, and re-renders updated tables", async () => {
    const server = new MockServer();
    const screens: string[] = [];
    const app = new App(new ApiClient(server.fetchJson), (html) => screens.push(html));
    await app.selectEntity(server.fixtures.entity);
    await app.showInteraction();

    const before = server.fixtures.before.metrics.entity_metrics;
    const after = server.fixtures.after.metrics.entity_metrics;
    expect(screens[screens.length - 1]).toContain(`data-bound="${before.tp}"`);

    await app.convertFp(server.fixtures.correctedMatchId);

    expect(server.calls).toContain(
      `POST /api/matches/${server.fixtures.correctedMatchId}/correct`,
    );
    const rendered = screens[screens.length - 1];
    expect(rendered).toContain(`data-bound="${after.tp}"`);
    expect(rendered).toContain(`data-bound="${after.precision_display}"`);
    expect(after.tp).toBe(before.tp + 1);
    expect(after.fp).toBe(before.fp - 1);
  });

  it("re-renders the per-category corrected block too", async () => {
    const server = new MockServer();
    const screens: string[] = [];
    const app = new App(new ApiClient(server.fetchJson), (html) => screens.push(html));
    await app.selectEntity(server.fixtures.entity);
    await app.convertFp(server.fixtures.correctedMatchId);

    const rendered = screens[screens.length - 1];
    for (const row of server.fixtures.after.metrics.categories) {
      expect(rendered).toContain(`data-bound="${row.corrected.tp}"`);
    }
  });

  it("the converted match leaves the FP review list", async () => {
    const server = new MockServer();
    const screens: string[] = [];
    const app = new App(new ApiClient(server.fetchJson), (html) => screens.push(html));
    await app.selectEntity(server.fixtures.entity);
    await app.showInteraction();
    expect(screens[screens.length - 1]).toContain(server.fixtures.correctedMatchId);

    await app.convertFp(server.fixtures.correctedMatchId);
    expect(screens[screens.length - 1]).not.toContain(server.fixtures.correctedMatchId);
  });

  it("double conversion is a 409 from the contract, not a UI guess", async () => {
    const server = new MockServer();
    const api = new ApiClient(server.fetchJson);
    await api.correct(server.fixtures.correctedMatchId);
    await expect(api.correct(server.fixtures.correctedMatchId)).rejects.toMatchObject({
      status: 409,
    });
  });

  it("unknown match ids surface the 404 from the server", async () => {
    const server = new MockServer();
    const api = new ApiClient(server.fetchJson);
    try {
      await api.correct("feedfeedfeedfeed");
      expect.unreachable("should have thrown");
    } catch (error) {
      expect(error).toBeInstanceOf(ApiError);
      expect((error as ApiError).status).toBe(404);
    }
  });

  it("undo restores the pre-correction state", async () => {
    const server = new MockServer();
    const api = new ApiClient(server.fetchJson);
    await api.correct(server.fixtures.correctedMatchId);
    expect(server.corrected).toBe(true);
    await api.undoCorrect(server.fixtures.correctedMatchId);
    expect(server.corrected).toBe(false);
  });
});
