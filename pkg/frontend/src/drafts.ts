// Turn typed slot text into the category wire format.
//
// One slot = one category. Expressions are comma-separated; each piece is
// a regex when written /like this/, a gap expression when it contains a
// "...N" (or "…N") marker, and a plain term otherwise. The shared
// ban-word slot applies to every submitted category.

import type { CategoryPayload, GapExpressionPayload } from "./types.js";

const GAP_MARKER = /\s*(?:\.{3}|…)\s*(\d+)\s+/;

export interface ParsedSlot {
  terms: string[];
  gapExpressions: GapExpressionPayload[];
  regexes: string[];
}

export function parseSlot(text: string): ParsedSlot {
  const parsed: ParsedSlot = { terms: [], gapExpressions: [], regexes: [] };
  for (const raw of text.split(",")) {
    const piece = raw.trim();
    if (!piece) continue;
    if (piece.length > 2 && piece.startsWith("/") && piece.endsWith("/")) {
      parsed.regexes.push(piece.slice(1, -1));
      continue;
    }
    const sliced = splitGaps(piece);
    if (sliced) {
      parsed.gapExpressions.push(sliced);
    } else {
      parsed.terms.push(piece);
    }
  }
  return parsed;
}

function splitGaps(piece: string): GapExpressionPayload | null {
  const segments: string[] = [];
  const gaps: number[] = [];
  let rest = piece;
  for (;;) {
    const m = GAP_MARKER.exec(rest);
    if (!m) break;
    const head = rest.slice(0, m.index).trim();
    if (!head) return null; // malformed: marker with no leading segment
    segments.push(head);
    gaps.push(parseInt(m[1], 10));
    rest = rest.slice(m.index + m[0].length);
  }
  if (!segments.length) return null;
  const tail = rest.trim();
  if (!tail) return null;
  segments.push(tail);
  return { segments, gaps };
}

export function slotsToCategories(slots: { text: string }[], banwords: string): CategoryPayload[] {
  const bans = banwords
    .split(",")
    .map((b) => b.trim())
    .filter(Boolean);
  const categories: CategoryPayload[] = [];
  slots.forEach((slot, index) => {
    const text = slot.text.trim();
    if (!text) return;
    const parsed = parseSlot(text);
    if (!parsed.terms.length && !parsed.gapExpressions.length && !parsed.regexes.length) return;
    categories.push({
      id: `c${index + 1}`,
      label: text,
      terms: parsed.terms,
      gap_expressions: parsed.gapExpressions,
      regexes: parsed.regexes,
      banwords: bans,
    });
  });
  return categories;
}

export function categoriesToSlots(
  categories: CategoryPayload[],
  slotCount: number,
): { slots: { text: string }[]; banwords: string } {
  const slots = Array.from({ length: Math.max(slotCount, categories.length) }, () => ({ text: "" }));
  const bans = new Set<string>();
  categories.forEach((cat, index) => {
    const pieces: string[] = [...cat.terms];
    for (const gap of cat.gap_expressions) {
      const parts = [gap.segments[0]];
      gap.gaps.forEach((g, i) => parts.push(`...${g} ${gap.segments[i + 1]}`));
      pieces.push(parts.join(" "));
    }
    pieces.push(...cat.regexes.map((r) => `/${r}/`));
    slots[index] = { text: pieces.join(", ") };
    cat.banwords.forEach((b) => bans.add(b));
  });
  return { slots, banwords: [...bans].join(", ") };
}
