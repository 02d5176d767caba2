// HTML string helpers. Every metric value rendered anywhere goes through
// bound(), which tags the element with data-bound so tests can sweep the
// output and verify each displayed number exists verbatim in the API
// payload it came from.

export function escapeHtml(value: unknown): string {
  return String(value)
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

export function escapeAttr(value: unknown): string {
  return escapeHtml(value);
}

// Undefined metrics (precision over zero matches) render as an explicit
// dash, never as 0.
export function bound(value: number | string | null | undefined): string {
  if (value === null || value === undefined) {
    return `<span class="bound undefined-value">&ndash;</span>`;
  }
  const text = escapeHtml(value);
  return `<span class="bound" data-bound="${text}">${text}</span>`;
}

export function boundCi(ci: [number, number] | null | undefined): string {
  if (!ci) {
    return `<span class="bound undefined-value">&ndash;</span>`;
  }
  return `[${bound(ci[0])}, ${bound(ci[1])}]`;
}
