// DOM rendering. Pure function of the wizard state: every number shown is
// taken verbatim from the latest API response.

import { Diagnosis, SessionView, TheoremVerdict } from "./api.js";
import {
  EntryKind,
  WizardState,
  Wizard,
  bestRowComplete,
  canAdvance,
  entryKey,
  middles,
} from "./state.js";

const SAATY_CHOICES = ["2", "3", "4", "5", "6", "7", "8", "9"];

type Child = Node | string;

function h(tag: string, attrs: Record<string, string> = {}, ...children: Child[]): HTMLElement {
  const el = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    if (k === "class") el.className = v;
    else el.setAttribute(k, v);
  }
  for (const child of children) {
    el.append(child instanceof Node ? child : document.createTextNode(child));
  }
  return el;
}

export function parseFraction(text: string): number {
  const [num, den] = text.split("/");
  return den === undefined ? Number(num) : Number(num) / Number(den);
}

function stepIndicator(state: WizardState): HTMLElement {
  const steps: Array<[string, string]> = [
    ["setup", "1. Alternatives"],
    ["best-row", "2. Best vs others"],
    ["worst-column", "3. Others vs worst"],
    ["review", "4. Priorities"],
  ];
  const bar = h("nav", { class: "steps" });
  for (const [id, label] of steps) {
    bar.append(h("span", { class: `step${state.step === id ? " active" : ""}` }, label));
  }
  return bar;
}

function errorBanner(state: WizardState, wizard: Wizard): HTMLElement | null {
  if (!state.error) return null;
  const retry = h("button", { class: "retry", type: "button" }, "Retry");
  retry.addEventListener("click", () => void wizard.retry());
  return h("div", { class: "banner banner-error", role: "alert" },
    `Request failed: ${state.error} `, retry);
}

function setupForm(state: WizardState, wizard: Wizard): HTMLElement {
  const n = h("input", { type: "number", min: "3", max: "26", value: "6", id: "setup-n" }) as HTMLInputElement;
  const best = h("input", { type: "number", min: "1", value: "1", id: "setup-best" }) as HTMLInputElement;
  const worst = h("input", { type: "number", min: "1", value: "6", id: "setup-worst" }) as HTMLInputElement;
  n.addEventListener("change", () => { worst.value = n.value; });
  const go = h("button", { type: "button", id: "setup-start" }, "Start comparing");
  go.addEventListener("click", () =>
    void wizard.start(Number(n.value), Number(best.value), Number(worst.value)));
  return h("section", { class: "card" },
    h("h2", {}, "Choose the alternatives"),
    h("p", {}, "How many alternatives, and which are the best and the worst?"),
    h("label", {}, "Alternatives ", n),
    h("label", {}, "Best ", best),
    h("label", {}, "Worst ", worst),
    go,
  );
}

function judgmentEditor(
  state: WizardState,
  wizard: Wizard,
  kind: EntryKind,
  j: number | null,
  current: string | null,
  label: string,
  highlight: boolean,
): HTMLElement {
  const key = entryKey(kind, j);
  const row = h("div", { class: `judgment${highlight ? " highlight" : ""}`, "data-key": key });
  row.append(h("span", { class: "judgment-label" }, label));

  const select = h("select", {}) as HTMLSelectElement;
  select.append(h("option", { value: "" }, "—"));
  for (const value of SAATY_CHOICES) select.append(h("option", { value }, value));
  const onScale = current !== null && SAATY_CHOICES.includes(current);
  if (onScale) select.value = current as string;
  select.addEventListener("change", () => {
    if (select.value) void wizard.setEntry(kind, j, select.value);
  });
  row.append(select);

  // advanced escape hatch: any rational above 1, e.g. "5/2"
  const free = h("input", {
    type: "text", class: "free-input", placeholder: "p/q",
    value: current !== null && !onScale ? current : "",
  }) as HTMLInputElement;
  free.addEventListener("change", () => {
    if (free.value.trim()) void wizard.setEntry(kind, j, free.value.trim());
  });
  const toggle = h("button", { type: "button", class: "advanced-toggle", title: "free rational input" }, "…");
  toggle.addEventListener("click", () => row.classList.toggle("advanced"));
  row.append(toggle, free);

  const fieldError = state.fieldErrors[key];
  if (fieldError) {
    row.classList.add("advanced");
    row.append(h("span", { class: "field-error" }, fieldError));
  }
  return row;
}

function bestRowStep(state: WizardState, wizard: Wizard, session: SessionView): HTMLElement {
  const card = h("section", { class: "card" },
    h("h2", {}, `How much better is alternative ${session.best} than…`));
  const offending = new Set(state.session?.result?.offending ?? []);
  for (const j of middles(session)) {
    card.append(judgmentEditor(
      state, wizard, "best", j,
      session.best_to_others[String(j)] ?? null,
      `…alternative ${j}`, offending.has(j),
    ));
  }
  card.append(judgmentEditor(
    state, wizard, "shared", null, session.best_to_worst,
    `…the worst (alternative ${session.worst})`, false,
  ));
  return card;
}

function worstColumnStep(state: WizardState, wizard: Wizard, session: SessionView): HTMLElement {
  const card = h("section", { class: "card" },
    h("h2", {}, `How much better than the worst (alternative ${session.worst}) is…`));
  const offending = new Set(state.session?.result?.offending ?? []);
  for (const j of middles(session)) {
    card.append(judgmentEditor(
      state, wizard, "worst", j,
      session.others_to_worst[String(j)] ?? null,
      `…alternative ${j}`, offending.has(j),
    ));
  }
  return card;
}

function weightBars(session: SessionView): HTMLElement {
  const result = session.result!;
  const weights = result.weights.w_sum;
  const top = Math.max(...weights);
  const chart = h("div", { class: "bars" });
  weights.forEach((w, idx) => {
    const alt = idx + 1;
    const tags: string[] = [];
    if (alt === session.best) tags.push("best");
    if (alt === session.worst) tags.push("worst");
    if (result.offending.includes(alt)) tags.push("offending");
    const bar = h("div", { class: "bar-fill" });
    bar.style.width = `${(w / top) * 100}%`;
    chart.append(
      h("div", { class: `bar ${tags.join(" ")}`, "data-alt": String(alt) },
        h("span", { class: "bar-label" }, `A${alt}${tags.length ? ` (${tags.join(", ")})` : ""}`),
        h("div", { class: "bar-track" }, bar),
        h("span", { class: "bar-value", "data-alt-value": String(alt) }, String(w)),
      ),
    );
  });
  return chart;
}

function violationBanner(session: SessionView): HTMLElement | null {
  const result = session.result!;
  if (!result.needs_reexamination) {
    if (result.violations.tie_count > 0) {
      return h("div", { class: "banner banner-tie" },
        "Exact weight tie with the best or worst alternative: the order is not strictly contradicted, but consider strengthening a judgment.");
    }
    return h("div", { class: "banner banner-ok" },
      "No ordinal violation: the chosen best has the highest weight and the chosen worst the lowest.");
  }
  const who = result.offending.join(", ");
  const toRevisit = result.violations.items
    .filter((v) => !v.tie)
    .map((v) => `a(${v.i},${v.j}) = ${v.value}`)
    .join("; ");
  return h("div", { class: "banner banner-violation", role: "alert" },
    h("strong", {}, "Ordinal violation: "),
    `alternative ${who} contradicts your best/worst choice. `,
    `Revisit the highlighted comparisons (${toRevisit}) or weaken the strongest judgment.`,
  );
}

function boundNumber(check: TheoremVerdict | undefined): number | null {
  if (!check || check.bound === null || check.bound === undefined) return null;
  return typeof check.bound === "number" ? check.bound : parseFraction(check.bound);
}

function safeZoneGauge(diag: Diagnosis): HTMLElement {
  const maxEntry = parseFraction(diag.max_entry);
  const b1 = boundNumber(diag.theorem1);
  const b2 = boundNumber(diag.theorem2);
  const hi = Math.max(maxEntry, b1 ?? 0, b2 ?? 0) * 1.15;
  const pos = (x: number) => `${Math.min(100, (x / hi) * 100)}%`;

  const track = h("div", { class: "gauge-track" });
  if (b1 !== null) {
    const zone = h("div", { class: `gauge-zone${diag.theorem1?.pass ? " pass" : ""}` });
    zone.style.width = pos(b1);
    track.append(zone);
    const marker = h("div", { class: "gauge-marker t1", title: `dominance cap p³ = ${diag.theorem1?.bound}` });
    marker.style.left = pos(b1);
    track.append(marker);
  }
  if (b2 !== null) {
    const marker = h("div", { class: "gauge-marker t2", title: `relaxed cap = ${b2}` });
    marker.style.left = pos(b2);
    track.append(marker);
  }
  const needle = h("div", { class: "gauge-needle", title: `strongest judgment = ${diag.max_entry}` });
  needle.style.left = pos(maxEntry);
  track.append(needle);

  const lines: string[] = [];
  if (diag.theorem1) {
    lines.push(
      diag.theorem1.pass
        ? `within the p³ = ${diag.theorem1.bound} safe zone (margin ${diag.theorem1.margin})`
        : `strongest judgment ${diag.max_entry} exceeds p³ = ${diag.theorem1.bound}`,
    );
  }
  if (diag.theorem2) {
    lines.push(
      diag.theorem2.pass
        ? `within the relaxed cap (margin ${diag.theorem2.margin})`
        : diag.theorem2.reason ?? "relaxed cap not applicable",
    );
  }
  return h("section", { class: "gauge" },
    h("h3", {}, `Safe zone (p = ${diag.p}, strongest judgment ${diag.max_entry})`),
    track,
    h("p", { class: "gauge-caption" }, lines.join(" · ")),
  );
}

function reviewStep(state: WizardState, wizard: Wizard, session: SessionView): HTMLElement {
  const card = h("section", { class: "card" }, h("h2", {}, "Priorities"));
  const banner = violationBanner(session);
  if (banner) card.append(banner);
  card.append(weightBars(session));
  card.append(safeZoneGauge(session.result!.diagnosis));

  const revise = h("details", { class: "revise" }, h("summary", {}, "Revise judgments"));
  revise.append(bestRowStep(state, wizard, session));
  revise.append(worstColumnStep(state, wizard, session));
  if (session.result!.needs_reexamination) (revise as HTMLDetailsElement).open = true;
  card.append(revise);
  return card;
}

function navButtons(state: WizardState, wizard: Wizard): HTMLElement {
  const nav = h("div", { class: "nav" });
  if (state.step !== "setup" && state.step !== "best-row") {
    const back = h("button", { type: "button", id: "nav-back" }, "Back");
    back.addEventListener("click", () => wizard.back());
    nav.append(back);
  }
  if (state.step === "best-row" || state.step === "worst-column") {
    const next = h("button", { type: "button", id: "nav-next" },
      state.step === "worst-column" ? "See priorities" : "Next");
    if (!canAdvance(state)) next.setAttribute("disabled", "disabled");
    next.addEventListener("click", () => wizard.next());
    nav.append(next);
  }
  return nav;
}

export function render(root: HTMLElement, state: WizardState, wizard: Wizard): void {
  root.textContent = "";
  root.append(h("h1", {}, "Best-worst priorities"));
  root.append(stepIndicator(state));
  const banner = errorBanner(state, wizard);
  if (banner) root.append(banner);

  const session = state.session;
  if (state.step === "setup" || !session) {
    root.append(setupForm(state, wizard));
    return;
  }
  if (state.step === "best-row") {
    root.append(bestRowStep(state, wizard, session));
  } else if (state.step === "worst-column") {
    root.append(worstColumnStep(state, wizard, session));
  } else if (state.step === "review" && session.result) {
    root.append(reviewStep(state, wizard, session));
  } else {
    // review requested but the session regressed (an entry was cleared)
    root.append(bestRowComplete(session)
      ? worstColumnStep(state, wizard, session)
      : bestRowStep(state, wizard, session));
  }
  root.append(navButtons(state, wizard));
  if (state.busy) root.append(h("div", { class: "busy" }, "…"));
}
