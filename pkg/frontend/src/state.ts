import type { CandidateObj, DocumentObj, SpanObj } from "./types";

export type Filter = "all" | "ambiguous" | "unknown" | "notes";

/** Everything the view needs about one document under review. */
export interface ReviewState {
  docId: string;
  doc: DocumentObj;
  filter: Filter;
  activeSpan: number | null;
  error: string | null;
}

export function initialState(docId: string, doc: DocumentObj): ReviewState {
  return { docId, doc, filter: "all", activeSpan: null, error: null };
}

export interface Progress {
  total: number;
  ambiguous: number;
  unknown: number;
  notes: number;
  resolved: number;
  pending: number;
}

function isNoteSpan(span: SpanObj): boolean {
  return span.candidates.some((c) => c.kind === "note");
}

/** A span the validator still has to look at. */
export function isPending(span: SpanObj): boolean {
  if (span.selected !== null) return false;
  if (span.status === "unknown") return true;
  return span.candidates.length > 0 && span.status !== "plain";
}

export function progress(state: ReviewState): Progress {
  const spans = state.doc.spans;
  return {
    total: spans.length,
    ambiguous: spans.filter((s) => s.status === "ambiguous" && s.selected === null).length,
    unknown: spans.filter((s) => s.status === "unknown" && s.selected === null).length,
    notes: spans.filter(isNoteSpan).length,
    resolved: spans.filter((s) => s.selected !== null).length,
    pending: spans.filter(isPending).length,
  };
}

export function visibleSpans(state: ReviewState): SpanObj[] {
  const spans = state.doc.spans;
  switch (state.filter) {
    case "ambiguous":
      return spans.filter((s) => s.status === "ambiguous");
    case "unknown":
      return spans.filter((s) => s.status === "unknown");
    case "notes":
      return spans.filter(isNoteSpan);
    default:
      return spans;
  }
}

/** Next span needing attention after `fromId`, wrapping around. */
export function nextPending(state: ReviewState, fromId: number | null): number | null {
  const spans = state.doc.spans;
  const start = fromId === null ? 0 : fromId + 1;
  for (let offset = 0; offset < spans.length; offset++) {
    const span = spans[(start + offset) % spans.length];
    if (isPending(span)) return span.id;
  }
  return null;
}

/** Optimistic local application of a selection; the caller keeps the old
 * state for rollback if the service rejects it. */
export function applySelection(
  state: ReviewState,
  spanId: number,
  choice: { index: number } | { text: string },
): ReviewState {
  const spans = state.doc.spans.map((span) => {
    if (span.id !== spanId) return span;
    if ("text" in choice) {
      const existing = span.candidates.findIndex(
        (c) => c.kind === "manual" && c.text === choice.text,
      );
      if (existing >= 0) return { ...span, selected: existing };
      const manual: CandidateObj = {
        span: span.tokens,
        text: choice.text,
        kind: "manual",
        rule: "user:override",
        requires_validation: false,
      };
      return { ...span, candidates: [...span.candidates, manual], selected: span.candidates.length };
    }
    if (choice.index < 0 || choice.index >= span.candidates.length) {
      throw new RangeError(`span ${spanId} has no candidate ${choice.index}`);
    }
    return { ...span, selected: choice.index };
  });
  return { ...state, doc: { ...state.doc, spans } };
}

/** The final text the current selections produce; mirrors the engine's
 * export semantics so the preview always equals GET /export. */
export function previewText(state: ReviewState, includeNotes = false): string {
  const replacements: Array<{ start: number; end: number; text: string }> = [];
  for (const span of state.doc.spans) {
    if (span.candidates.length === 0) continue;
    let pick: number | null = span.selected;
    let explicit = pick !== null;
    if (pick === null) {
      pick = span.candidates.findIndex((c) => c.kind !== "note" || includeNotes);
      if (pick < 0) continue;
    }
    const candidate = span.candidates[pick];
    if (candidate.kind === "note" && !includeNotes && !explicit) continue;
    replacements.push({ start: span.start, end: span.end, text: candidate.text });
  }
  replacements.sort((a, b) => b.start - a.start);
  let out = state.doc.current_text;
  for (const r of replacements) {
    out = out.slice(0, r.start) + r.text + out.slice(r.end);
  }
  return out;
}

/** Spans that would silently fall back to a default on export. */
export function unresolvedSpans(state: ReviewState): SpanObj[] {
  return state.doc.spans.filter(isPending);
}
