// In-memory server implementing only the documented endpoint contract,
// backed by fixtures recorded from the real service: one snapshot before
// and one after converting a specific false positive. POST /correct on
// that match flips the state to the "after" snapshot; DELETE flips back.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { ApiError, FetchJson } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export interface RecordedFixtures {
  entity: string;
  correctedMatchId: string;
  before: Record<string, any>;
  after: Record<string, any>;
}

export function loadFixtures(): RecordedFixtures {
  return JSON.parse(readFileSync(join(here, "fixtures.json"), "utf-8"));
}

export class MockServer {
  fixtures = loadFixtures();
  corrected = false;
  calls: string[] = [];
  thresholds = { ...this.fixtures.before.thresholds };
  discards: Record<string, string[]> = {};

  private snapshot(): Record<string, any> {
    return this.corrected ? this.fixtures.after : this.fixtures.before;
  }

  fetchJson: FetchJson = async (method, path, body) => {
    this.calls.push(`${method} ${path}`);
    const snap = this.snapshot();
    const entity = encodeURIComponent(this.fixtures.entity);

    if (method === "GET" && path === "/api/entities") return snap.entities;
    if (method === "GET" && path.startsWith(`/api/entities/${entity}/terms`)) return snap.terms;
    if (method === "PUT" && path === `/api/entities/${entity}/discards`) {
      this.discards[this.fixtures.entity] = (body as { terms: string[] }).terms;
      return { entity: this.fixtures.entity, discards: this.discards[this.fixtures.entity] };
    }
    if (method === "GET" && path.startsWith("/api/concordance")) return snap.concordance;
    if (method === "GET" && path === `/api/entities/${entity}/categories`) return snap.categories;
    if (method === "PUT" && path === `/api/entities/${entity}/categories`) {
      return { entity: this.fixtures.entity, categories: (body as any).categories };
    }
    if (method === "GET" && path === `/api/entities/${entity}/uncategorized`) return snap.uncategorized;
    if (method === "GET" && path.startsWith(`/api/entities/${entity}/spacing`)) return snap.spacing;
    if (method === "GET" && path === `/api/entities/${entity}/metrics`) return snap.metrics;
    if (method === "GET" && path === `/api/entities/${entity}/matches?class=FP`) return snap.matchesFP;
    if (method === "GET" && path === `/api/entities/${entity}/matches`) return snap.matchesAll;
    if (method === "GET" && path === `/api/entities/${entity}/recall-distribution`) return snap.distribution;
    if (method === "GET" && path === `/api/entities/${entity}/checklist`) return snap.checklist;
    if (method === "GET" && path === "/api/thresholds") return this.thresholds;
    if (method === "PUT" && path === "/api/thresholds") {
      this.thresholds = body as typeof this.thresholds;
      return this.thresholds;
    }
    if (method === "POST" && path === "/api/session/save") return { saved: "mock-session.json" };

    const correctMatch = path.match(/^\/api\/matches\/([^/]+)\/correct$/);
    if (correctMatch && method === "POST") {
      if (decodeURIComponent(correctMatch[1]) !== this.fixtures.correctedMatchId) {
        throw new ApiError(404, `unknown match '${correctMatch[1]}'`);
      }
      if (this.corrected) throw new ApiError(409, "match was already converted");
      this.corrected = true;
      return this.fixtures.after.correctResponse;
    }
    if (correctMatch && method === "DELETE") {
      if (!this.corrected || decodeURIComponent(correctMatch[1]) !== this.fixtures.correctedMatchId) {
        throw new ApiError(404, "match was not converted");
      }
      this.corrected = false;
      return this.fixtures.before.metrics;
    }

    throw new ApiError(404, `mock server: unhandled ${method} ${path}`);
  };
}

// Flatten every scalar of a payload into strings, for binding sweeps.
export function scalarSet(value: unknown, into = new Set<string>()): Set<string> {
  if (value === null || value === undefined) return into;
  if (Array.isArray(value)) {
    for (const item of value) scalarSet(item, into);
  } else if (typeof value === "object") {
    for (const item of Object.values(value as Record<string, unknown>)) scalarSet(item, into);
  } else {
    into.add(String(value));
  }
  return into;
}
