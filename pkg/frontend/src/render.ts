import type { ReviewState } from "./state";
import { isPending, previewText, progress, unresolvedSpans, visibleSpans } from "./state";
import type { SpanObj } from "./types";

export interface Handlers {
  onSelect(spanId: number, index: number): void;
  onOverride(spanId: number, text: string): void;
  onFilter(filter: ReviewState["filter"]): void;
  onActivate(spanId: number | null): void;
  onExport(includeNotes: boolean): void;
}

const FILTERS: ReviewState["filter"][] = ["all", "ambiguous", "unknown", "notes"];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Array<Node | string>
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  node.append(...children);
  return node;
}

export function renderError(container: HTMLElement, message: string): void {
  container.replaceChildren(
    el("div", { class: "banner error", role: "alert" }, message),
  );
}

/** Full re-render of the workbench; cheap at document scale. */
export function render(container: HTMLElement, state: ReviewState, handlers: Handlers): void {
  const counters = progress(state);
  const header = el(
    "header",
    {},
    el("h1", {}, `${state.docId}`),
    el(
      "div",
      { class: "progress" },
      `${counters.pending} pending / ${counters.ambiguous} ambiguous / ` +
        `${counters.unknown} unknown / ${counters.resolved} resolved`,
    ),
  );

  const filters = el("nav", { class: "filters" });
  for (const filter of FILTERS) {
    const button = el(
      "button",
      { "data-filter": filter, class: state.filter === filter ? "active" : "" },
      filter,
    );
    button.addEventListener("click", () => handlers.onFilter(filter));
    filters.append(button);
  }

  const banner = state.error
    ? el("div", { class: "banner error", role: "alert" }, state.error)
    : null;

  const text = renderText(state, handlers);
  const panel = renderPanel(state, handlers);
  const exportView = renderExport(state, handlers);

  container.replaceChildren(
    header,
    filters,
    ...(banner ? [banner] : []),
    text,
    panel,
    exportView,
  );
}

function spanClasses(state: ReviewState, span: SpanObj): string {
  const classes = ["span", `status-${span.status}`];
  if (span.selected !== null) classes.push("resolved");
  if (span.candidates.length === 1 && span.selected === null && span.status !== "unknown") {
    classes.push("sole"); // pre-selected by default, visually distinct
  }
  if (state.activeSpan === span.id) classes.push("active");
  if (span.candidates.some((c) => c.kind === "note")) classes.push("noted");
  return classes.join(" ");
}

function renderText(state: ReviewState, handlers: Handlers): HTMLElement {
  const doc = state.doc;
  const visible = new Set(visibleSpans(state).map((s) => s.id));
  const root = el("main", { class: "document" });
  let cursor = 0;
  for (const span of doc.spans) {
    if (span.start > cursor) {
      root.append(doc.current_text.slice(cursor, span.start));
    }
    const node = el(
      "mark",
      { class: spanClasses(state, span), "data-span": String(span.id) },
      doc.current_text.slice(span.start, span.end),
    );
    if (!visible.has(span.id)) node.classList.add("dimmed");
    node.addEventListener("click", () => handlers.onActivate(span.id));
    root.append(node);
    cursor = span.end;
  }
  root.append(doc.current_text.slice(cursor));
  return root;
}

function renderPanel(state: ReviewState, handlers: Handlers): HTMLElement {
  const panel = el("aside", { class: "panel" });
  if (state.activeSpan === null) {
    panel.append(el("p", { class: "hint" }, "Click a highlighted span to review it."));
    return panel;
  }
  const span = state.doc.spans[state.activeSpan];
  panel.append(el("h2", {}, `“${span.text}”`), el("p", { class: "status" }, span.status));

  if (span.analyses.length > 0) {
    const readings = el("ul", { class: "analyses" });
    for (const a of span.analyses) {
      const features = a.features.join("+");
      readings.append(
        el("li", {}, `${a.lemma} · ${a.pos}${features ? "+" + features : ""} · ${a.source}`),
      );
    }
    panel.append(el("h3", {}, "readings"), readings);
  }

  const list = el("ol", { class: "candidates" });
  span.candidates.forEach((candidate, index) => {
    const item = el(
      "li",
      { class: span.selected === index ? "selected" : "" },
      el("button", { "data-index": String(index) }, candidate.text),
      el(
        "span",
        { class: "provenance" },
        `${candidate.kind} · ${candidate.rule}` +
          (candidate.requires_validation ? " · needs validation" : ""),
      ),
    );
    if (candidate.kind === "note") {
      const note = span.analyses.find((a) => a.note)?.note;
      if (note) item.append(el("span", { class: "gloss" }, ` (${note})`));
    }
    item.querySelector("button")!.addEventListener("click", () => {
      handlers.onSelect(span.id, index);
    });
    list.append(item);
  });
  panel.append(el("h3", {}, "candidates"), list);

  const override = el("form", { class: "override" });
  const input = el("input", {
    type: "text",
    placeholder: span.status === "unknown" ? "type the transcription" : "manual override",
    "aria-label": "manual transcription",
  });
  override.append(input, el("button", { type: "submit" }, "apply"));
  override.addEventListener("submit", (event) => {
    event.preventDefault();
    if (input.value.trim()) handlers.onOverride(span.id, input.value.trim());
  });
  panel.append(override);
  return panel;
}

function renderExport(state: ReviewState, handlers: Handlers): HTMLElement {
  const residue = unresolvedSpans(state);
  const section = el("section", { class: "export" });
  const toggle = el("input", { type: "checkbox", id: "include-notes" });
  const button = el("button", { class: "download" }, "export validated text");
  button.addEventListener("click", () => {
    handlers.onExport((toggle as HTMLInputElement).checked);
  });
  section.append(
    el("h3", {}, "export"),
    el(
      "p",
      { class: residue.length ? "warning" : "ok" },
      residue.length
        ? `${residue.length} span(s) unresolved; the export will fall back to first-ranked candidates.`
        : "all spans resolved",
    ),
    el("label", { for: "include-notes" }, toggle, " include glosses"),
    button,
    el("pre", { class: "preview" }, previewText(state, (toggle as HTMLInputElement).checked)),
  );
  toggle.addEventListener("change", () => {
    section.querySelector(".preview")!.textContent = previewText(
      state,
      (toggle as HTMLInputElement).checked,
    );
  });
  return section;
}

export { isPending };
