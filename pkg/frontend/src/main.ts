// DOM shell: tab bar, mount point and event delegation. All logic lives
// in App; this file only translates DOM events into App intents.

import { ApiClient, httpFetchJson } from "./api.js";
import { App } from "./app.js";
import type { Step } from "./state.js";

const root = document.getElementById("app");
const tabs = document.getElementById("tabs");
const banner = document.getElementById("banner");
if (!root || !tabs || !banner) throw new Error("missing page scaffold");

const api = new ApiClient(httpFetchJson(""));
const app = new App(api, (html) => {
  root.innerHTML = html;
  const error = document.getElementById("category-error");
  if (error && app.lastError) {
    error.textContent = app.lastError;
    error.removeAttribute("hidden");
  }
});

function setActiveTab(step: Step): void {
  for (const button of tabs!.querySelectorAll("button[data-step]")) {
    button.classList.toggle("active", button.getAttribute("data-step") === step);
  }
}

async function guard(work: Promise<void>): Promise<void> {
  try {
    await work;
    banner!.setAttribute("hidden", "");
    setActiveTab(app.state.step);
  } catch (error) {
    banner!.textContent = `Service unreachable or request failed: ${String(error)} `;
    const retry = document.createElement("button");
    retry.textContent = "Retry";
    retry.addEventListener("click", () => void guard(app.refresh()));
    banner!.appendChild(retry);
    banner!.removeAttribute("hidden");
  }
}

tabs.addEventListener("click", (event) => {
  const button = (event.target as HTMLElement).closest("button[data-step]");
  if (!button) return;
  const step = button.getAttribute("data-step") as Step;
  if (step === "exploration") void guard(app.showExploration());
  else if (step === "interaction") void guard(app.showInteraction());
  else void guard(app.showDecision());
});

document.getElementById("save-session")?.addEventListener("click", () => {
  void guard(api.saveSession().then(() => undefined));
});

root.addEventListener("click", (event) => {
  const el = (event.target as HTMLElement).closest("[data-action]");
  if (!el) return;
  const action = el.getAttribute("data-action");
  if (action === "select-entity") {
    void guard(app.selectEntity(el.getAttribute("data-entity") ?? ""));
  } else if (action === "sort") {
    void guard(app.setSort((el.getAttribute("data-key") ?? "entity") as "entity" | "score" | "highlights"));
  } else if (action === "discard-term") {
    void guard(app.discardTerm(el.getAttribute("data-term") ?? ""));
  } else if (action === "clear-discards") {
    void guard(app.clearDiscards());
  } else if (action === "add-slot") {
    syncSlotInputs();
    void guard(app.addSlot());
  } else if (action === "remove-slot") {
    syncSlotInputs();
    void guard(app.removeSlot(Number(el.getAttribute("data-slot"))));
  } else if (action === "submit-categories") {
    syncSlotInputs();
    void guard(app.submitCategories());
  }
});

root.addEventListener("change", (event) => {
  const el = event.target as HTMLElement;
  if (el.matches('input[data-action="convert-fp"]')) {
    const matchId = el.getAttribute("data-match") ?? "";
    (el as HTMLInputElement).disabled = true; // no optimistic UI; wait for the server
    void guard(app.convertFp(matchId));
  }
});

root.addEventListener("submit", (event) => {
  const form = event.target as HTMLFormElement;
  const action = form.getAttribute("data-action");
  if (!action) return;
  event.preventDefault();
  const data = new FormData(form);
  if (action === "concordance-search") {
    void guard(app.searchConcordance(String(data.get("q") ?? "")));
  } else if (action === "spacing-probe") {
    syncSlotInputs();
    void guard(
      app.probeSpacing(
        String(data.get("first") ?? ""),
        String(data.get("second") ?? ""),
        Number(data.get("cap") ?? 200),
      ),
    );
  } else if (action === "save-thresholds") {
    void guard(
      app.saveThresholds({
        min_highlights: Number(data.get("min_highlights")),
        min_homogeneity: Number(data.get("min_homogeneity")),
        min_recall: Number(data.get("min_recall")),
        min_precision: Number(data.get("min_precision")),
        sequential: data.get("sequential") !== null,
      }),
    );
  }
});

// keep typed slot text in App state without re-rendering on each keystroke
function syncSlotInputs(): void {
  for (const input of root!.querySelectorAll<HTMLInputElement>("input.slot[data-slot]")) {
    app.setSlotText(Number(input.dataset.slot), input.value);
  }
  const bans = root!.querySelector<HTMLInputElement>("#banwords");
  if (bans) app.setBanwords(bans.value);
}

root.addEventListener("input", (event) => {
  const el = event.target as HTMLInputElement;
  if (el.matches("input.slot[data-slot]")) app.setSlotText(Number(el.dataset.slot), el.value);
  if (el.id === "banwords") app.setBanwords(el.value);
});

// drag-and-drop of n-gram chips into category slots (typing is the baseline)
root.addEventListener("dragstart", (event) => {
  const chip = (event.target as HTMLElement).closest("[data-ngram]");
  if (chip && event instanceof DragEvent && event.dataTransfer) {
    event.dataTransfer.setData("text/plain", chip.getAttribute("data-ngram") ?? "");
  }
});
root.addEventListener("dragover", (event) => {
  if ((event.target as HTMLElement).matches("input.slot")) event.preventDefault();
});
root.addEventListener("drop", (event) => {
  const input = event.target as HTMLInputElement;
  if (!input.matches("input.slot[data-slot]") || !(event instanceof DragEvent)) return;
  event.preventDefault();
  const text = event.dataTransfer?.getData("text/plain") ?? "";
  if (!text) return;
  app.appendToSlot(Number(input.dataset.slot), text);
  input.value = app.state.slots[Number(input.dataset.slot)]?.text ?? input.value;
});

void guard(app.showExploration());
