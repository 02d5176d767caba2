// Thin typed client over the workbench HTTP API. The transport is
// injectable so tests can swap in a mock server implementing the same
// endpoint contract.

import type {
  CategoriesResponse,
  CategoryPayload,
  ChecklistResponse,
  ConcordanceResponse,
  CorrectResponse,
  DistributionResponse,
  EntitiesResponse,
  MatchesResponse,
  MetricsResponse,
  SaveResponse,
  SpacingResponse,
  TermsResponse,
  ThresholdsPayload,
  UncategorizedResponse,
} from "./types.js";

export type FetchJson = (method: string, path: string, body?: unknown) => Promise<unknown>;

export class ApiError extends Error {
  constructor(public status: number, public detail: unknown) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
  }
}

export function httpFetchJson(baseUrl = ""): FetchJson {
  return async (method, path, body) => {
    const response = await fetch(baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      throw new ApiError(response.status, payload?.detail ?? response.statusText);
    }
    return payload;
  };
}

const enc = encodeURIComponent;

export class ApiClient {
  constructor(private readonly fetchJson: FetchJson) {}

  entities(): Promise<EntitiesResponse> {
    return this.fetchJson("GET", "/api/entities") as Promise<EntitiesResponse>;
  }

  terms(entity: string, discard: string[] = []): Promise<TermsResponse> {
    const query = discard.length ? `?discard=${enc(discard.join(","))}` : "";
    return this.fetchJson("GET", `/api/entities/${enc(entity)}/terms${query}`) as Promise<TermsResponse>;
  }

  putDiscards(entity: string, terms: string[]): Promise<unknown> {
    return this.fetchJson("PUT", `/api/entities/${enc(entity)}/discards`, { terms });
  }

  concordance(q: string, window = 8): Promise<ConcordanceResponse> {
    return this.fetchJson(
      "GET",
      `/api/concordance?q=${enc(q)}&window=${window}`,
    ) as Promise<ConcordanceResponse>;
  }

  getCategories(entity: string): Promise<CategoriesResponse> {
    return this.fetchJson("GET", `/api/entities/${enc(entity)}/categories`) as Promise<CategoriesResponse>;
  }

  putCategories(entity: string, categories: CategoryPayload[]): Promise<CategoriesResponse> {
    return this.fetchJson("PUT", `/api/entities/${enc(entity)}/categories`, {
      categories,
    }) as Promise<CategoriesResponse>;
  }

  uncategorized(entity: string): Promise<UncategorizedResponse> {
    return this.fetchJson("GET", `/api/entities/${enc(entity)}/uncategorized`) as Promise<UncategorizedResponse>;
  }

  spacing(entity: string, first: string, second: string, cap: number): Promise<SpacingResponse> {
    return this.fetchJson(
      "GET",
      `/api/entities/${enc(entity)}/spacing?first=${enc(first)}&second=${enc(second)}&cap=${cap}`,
    ) as Promise<SpacingResponse>;
  }

  metrics(entity: string): Promise<MetricsResponse> {
    return this.fetchJson("GET", `/api/entities/${enc(entity)}/metrics`) as Promise<MetricsResponse>;
  }

  matches(entity: string, classification?: string): Promise<MatchesResponse> {
    const query = classification ? `?class=${enc(classification)}` : "";
    return this.fetchJson("GET", `/api/entities/${enc(entity)}/matches${query}`) as Promise<MatchesResponse>;
  }

  correct(matchId: string): Promise<CorrectResponse> {
    return this.fetchJson("POST", `/api/matches/${enc(matchId)}/correct`) as Promise<CorrectResponse>;
  }

  undoCorrect(matchId: string): Promise<CorrectResponse> {
    return this.fetchJson("DELETE", `/api/matches/${enc(matchId)}/correct`) as Promise<CorrectResponse>;
  }

  distribution(entity: string): Promise<DistributionResponse> {
    return this.fetchJson(
      "GET",
      `/api/entities/${enc(entity)}/recall-distribution`,
    ) as Promise<DistributionResponse>;
  }

  checklist(entity: string): Promise<ChecklistResponse> {
    return this.fetchJson("GET", `/api/entities/${enc(entity)}/checklist`) as Promise<ChecklistResponse>;
  }

  getThresholds(): Promise<ThresholdsPayload> {
    return this.fetchJson("GET", "/api/thresholds") as Promise<ThresholdsPayload>;
  }

  putThresholds(thresholds: ThresholdsPayload): Promise<ThresholdsPayload> {
    return this.fetchJson("PUT", "/api/thresholds", thresholds) as Promise<ThresholdsPayload>;
  }

  saveSession(): Promise<SaveResponse> {
    return this.fetchJson("POST", "/api/session/save") as Promise<SaveResponse>;
  }
}
