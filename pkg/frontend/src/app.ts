// Screen controller. Owns the view state, talks to the API client, and
// hands rendered HTML to an injected mount function, so the whole flow is
// testable without a browser. Corrections are never applied optimistically:
// the screen re-renders only from the server's acknowledged state.

import { ApiClient, ApiError } from "./api.js";
import { categoriesToSlots, slotsToCategories } from "./drafts.js";
import { initialState, INITIAL_SLOTS, Step, ViewState } from "./state.js";
import { renderDecision } from "./views/decision.js";
import { renderExploration } from "./views/exploration.js";
import { renderInteraction } from "./views/interaction.js";
import type {
  ConcordanceResponse,
  MatchesResponse,
  MetricsResponse,
  SpacingResponse,
  TermsResponse,
  UncategorizedResponse,
} from "./types.js";

export type Mount = (html: string) => void;

export class App {
  state: ViewState = initialState();
  lastError = "";

  constructor(
    private readonly api: ApiClient,
    private readonly mount: Mount,
  ) {}

  async refresh(): Promise<void> {
    const step = this.state.step;
    if (step === "exploration") await this.showExploration();
    else if (step === "interaction") await this.showInteraction();
    else await this.showDecision();
  }

  async showExploration(): Promise<void> {
    this.state.step = "exploration";
    const entities = await this.api.entities();
    let terms: TermsResponse | null = null;
    let rows: ConcordanceResponse | null = null;
    if (this.state.entity) {
      terms = await this.api.terms(this.state.entity, this.state.discards);
    }
    if (this.state.concordanceQuery) {
      rows = await this.api.concordance(this.state.concordanceQuery);
    }
    this.mount(renderExploration({ entities, terms, concordance: rows }, this.state));
  }

  async showInteraction(): Promise<void> {
    this.state.step = "interaction";
    if (!this.state.entity) {
      this.mount(renderInteraction({ metrics: null, uncategorized: null, fpMatches: null, spacing: null }, this.state));
      return;
    }
    const entity = this.state.entity;
    const stored = await this.api.getCategories(entity);
    if (stored.categories.length && this.state.slots.every((s) => !s.text.trim())) {
      const { slots, banwords } = categoriesToSlots(stored.categories, INITIAL_SLOTS);
      this.state.slots = slots;
      this.state.banwords = banwords;
    }
    let metrics: MetricsResponse | null = null;
    let uncategorized: UncategorizedResponse | null = null;
    let fpMatches: MatchesResponse | null = null;
    if (stored.categories.length) {
      metrics = await this.api.metrics(entity);
      uncategorized = await this.api.uncategorized(entity);
      fpMatches = await this.api.matches(entity, "FP");
    }
    let spacing: SpacingResponse | null = null;
    const probe = this.state.spacingProbe;
    if (probe) {
      spacing = await this.api.spacing(entity, probe.first, probe.second, probe.cap);
    }
    this.mount(renderInteraction({ metrics, uncategorized, fpMatches, spacing }, this.state));
  }

  async showDecision(): Promise<void> {
    this.state.step = "decision";
    if (!this.state.entity) {
      this.mount(renderDecision({ distribution: null, checklist: null, thresholds: null }, this.state));
      return;
    }
    const entity = this.state.entity;
    const checklist = await this.api.checklist(entity);
    const thresholds = await this.api.getThresholds();
    const categories = await this.api.getCategories(entity);
    const distribution = categories.categories.length ? await this.api.distribution(entity) : null;
    this.mount(renderDecision({ distribution, checklist, thresholds }, this.state));
  }

  // -- exploration intents --------------------------------------------------

  async selectEntity(entity: string): Promise<void> {
    if (this.state.entity !== entity) {
      this.state.entity = entity;
      this.state.discards = [];
      this.state.slots = initialState().slots;
      this.state.banwords = "";
      this.state.spacingProbe = null;
    }
    await this.refresh();
  }

  async setSort(key: "entity" | "score" | "highlights"): Promise<void> {
    if (this.state.sortKey === key) {
      this.state.sortDir = this.state.sortDir === 1 ? -1 : 1;
    } else {
      this.state.sortKey = key;
      this.state.sortDir = 1;
    }
    await this.showExploration();
  }

  async discardTerm(term: string): Promise<void> {
    if (!this.state.entity) return;
    this.state.discards.push(term);
    await this.api.putDiscards(this.state.entity, this.state.discards);
    await this.showExploration();
  }

  async clearDiscards(): Promise<void> {
    if (!this.state.entity) return;
    this.state.discards = [];
    await this.api.putDiscards(this.state.entity, []);
    await this.showExploration();
  }

  async searchConcordance(query: string): Promise<void> {
    this.state.concordanceQuery = query;
    await this.showExploration();
  }

  // -- interaction intents ---------------------------------------------------

  setSlotText(index: number, text: string): void {
    if (this.state.slots[index]) this.state.slots[index].text = text;
  }

  setBanwords(text: string): void {
    this.state.banwords = text;
  }

  appendToSlot(index: number, text: string): void {
    const slot = this.state.slots[index];
    if (!slot) return;
    slot.text = slot.text.trim() ? `${slot.text.trim()}, ${text}` : text;
  }

  addSlot(): Promise<void> {
    this.state.slots.push({ text: "" });
    return this.showInteraction();
  }

  removeSlot(index: number): Promise<void> {
    this.state.slots.splice(index, 1);
    if (!this.state.slots.length) this.state.slots.push({ text: "" });
    return this.showInteraction();
  }

  async submitCategories(): Promise<void> {
    if (!this.state.entity) return;
    const categories = slotsToCategories(this.state.slots, this.state.banwords);
    this.lastError = "";
    try {
      await this.api.putCategories(this.state.entity, categories);
    } catch (error) {
      this.lastError = error instanceof ApiError ? String(error.message) : String(error);
    }
    await this.showInteraction();
  }

  async probeSpacing(first: string, second: string, cap: number): Promise<void> {
    this.state.spacingProbe = { first, second, cap };
    await this.showInteraction();
  }

  async convertFp(matchId: string): Promise<void> {
    await this.api.correct(matchId); // wait for the server before re-rendering
    await this.showInteraction();
  }

  // -- decision intents --------------------------------------------------------

  async saveThresholds(values: {
    min_highlights: number;
    min_homogeneity: number;
    min_recall: number;
    min_precision: number;
    sequential: boolean;
  }): Promise<void> {
    await this.api.putThresholds(values);
    await this.showDecision();
  }
}
