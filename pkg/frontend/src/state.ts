// Client-side view state. Draft category slots never touch server state
// until explicitly submitted.

export type Step = "exploration" | "interaction" | "decision";

export const INITIAL_SLOTS = 7;

export interface SlotDraft {
  text: string; // comma-separated expressions; gap syntax "a ...15 b"; regex "/re/"
}

export interface ViewState {
  entity: string | null;
  step: Step;
  slots: SlotDraft[];
  banwords: string;
  discards: string[];
  concordanceQuery: string;
  spacingProbe: { first: string; second: string; cap: number } | null;
  sortKey: "entity" | "score" | "highlights";
  sortDir: 1 | -1;
}

export function initialState(): ViewState {
  return {
    entity: null,
    step: "exploration",
    slots: Array.from({ length: INITIAL_SLOTS }, () => ({ text: "" })),
    banwords: "",
    discards: [],
    concordanceQuery: "",
    spacingProbe: null,
    sortKey: "entity",
    sortDir: 1,
  };
}
