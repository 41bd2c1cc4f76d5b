import { ApiClient, ApiError } from "./api";
import { render, renderError } from "./render";
import {
  applySelection,
  initialState,
  nextPending,
  previewText,
  type ReviewState,
} from "./state";
import { DOCUMENT_SCHEMA } from "./types";
import "./styles.css";

const api = new ApiClient();
let state: ReviewState | null = null;
const root = () => document.getElementById("app")!;

function repaint(): void {
  if (state) render(root(), state, handlers);
}

async function submit(spanId: number, choice: { index: number } | { text: string }) {
  if (!state) return;
  const before = state;
  state = { ...applySelection(state, spanId, choice), error: null };
  repaint();
  try {
    await api.submitSelection(state.docId, spanId, choice);
  } catch (err) {
    // the service rejected it: roll the optimistic update back
    const reason = err instanceof ApiError ? err.message : String(err);
    state = { ...before, error: `${reason} — selection rolled back, try again` };
    repaint();
  }
}

const handlers = {
  onSelect(spanId: number, index: number) {
    void submit(spanId, { index });
  },
  onOverride(spanId: number, text: string) {
    void submit(spanId, { text });
  },
  onFilter(filter: ReviewState["filter"]) {
    if (!state) return;
    state = { ...state, filter };
    repaint();
  },
  onActivate(spanId: number | null) {
    if (!state) return;
    state = { ...state, activeSpan: spanId };
    repaint();
  },
  onExport(includeNotes: boolean) {
    if (!state) return;
    const text = previewText(state, includeNotes);
    const blob = new Blob([text], { type: "text/plain;charset=utf-8" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `${state.docId}.transcribed.txt`;
    link.click();
    URL.revokeObjectURL(link.href);
  },
};

function onKey(event: KeyboardEvent): void {
  if (!state || event.target instanceof HTMLInputElement) return;
  if (event.key === "n") {
    state = { ...state, activeSpan: nextPending(state, state.activeSpan) };
    repaint();
    return;
  }
  if (state.activeSpan !== null && /^[1-9]$/.test(event.key)) {
    const index = Number(event.key) - 1;
    const span = state.doc.spans[state.activeSpan];
    if (index < span.candidates.length) void submit(span.id, { index });
  }
}

async function boot(): Promise<void> {
  try {
    const documents = await api.listDocuments();
    if (documents.length === 0) {
      renderError(root(), "the service has no documents loaded");
      return;
    }
    const wanted = new URLSearchParams(location.search).get("doc") ?? documents[0].id;
    const doc = await api.getDocument(wanted);
    if (doc.schema !== DOCUMENT_SCHEMA) {
      renderError(root(), `unsupported document schema ${doc.schema}`);
      return;
    }
    state = initialState(wanted, doc);
    document.addEventListener("keydown", onKey);
    repaint();
  } catch (err) {
    renderError(root(), err instanceof Error ? err.message : String(err));
  }
}

void boot();
