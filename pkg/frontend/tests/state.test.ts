import { describe, expect, it } from "vitest";

import {
  applySelection,
  initialState,
  isPending,
  nextPending,
  previewText,
  progress,
  unresolvedSpans,
  visibleSpans,
} from "../src/state";
import { fixtureDocument } from "./fixture";

describe("progress counters", () => {
  it("derive from the span list", () => {
    const state = initialState("fixture", fixtureDocument());
    expect(progress(state)).toEqual({
      total: 9,
      ambiguous: 1,
      unknown: 1,
      notes: 1,
      resolved: 0,
      pending: 3, // sinne, pix, toung
    });
  });

  it("selection resolves a pending span", () => {
    let state = initialState("fixture", fixtureDocument());
    state = applySelection(state, 1, { index: 0 });
    const counters = progress(state);
    expect(counters.resolved).toBe(1);
    expect(counters.pending).toBe(2);
    expect(counters.ambiguous).toBe(0);
  });
});

describe("filters", () => {
  it("narrow the visible spans", () => {
    const state = initialState("fixture", fixtureDocument());
    expect(visibleSpans(state)).toHaveLength(9);
    expect(visibleSpans({ ...state, filter: "ambiguous" }).map((s) => s.text)).toEqual(["sinne"]);
    expect(visibleSpans({ ...state, filter: "unknown" }).map((s) => s.text)).toEqual(["toung"]);
    expect(visibleSpans({ ...state, filter: "notes" }).map((s) => s.text)).toEqual(["pix"]);
  });
});

describe("selection", () => {
  it("is optimistic and reversible by keeping the old state", () => {
    const before = initialState("fixture", fixtureDocument());
    const after = applySelection(before, 1, { index: 1 });
    expect(after.doc.spans[1].selected).toBe(1);
    expect(before.doc.spans[1].selected).toBeNull(); // untouched
  });

  it("rejects an out-of-range index", () => {
    const state = initialState("fixture", fixtureDocument());
    expect(() => applySelection(state, 1, { index: 7 })).toThrow(RangeError);
  });

  it("records a free-text override as a manual candidate", () => {
    let state = initialState("fixture", fixtureDocument());
    state = applySelection(state, 8, { text: "tongue" });
    const span = state.doc.spans[8];
    expect(span.candidates).toHaveLength(1);
    expect(span.candidates[0]).toMatchObject({ kind: "manual", text: "tongue" });
    expect(span.selected).toBe(0);
    expect(isPending(span)).toBe(false);
  });

  it("reuses an existing manual candidate with the same text", () => {
    let state = initialState("fixture", fixtureDocument());
    state = applySelection(state, 8, { text: "tongue" });
    state = applySelection(state, 8, { text: "tongue" });
    expect(state.doc.spans[8].candidates).toHaveLength(1);
  });
});

describe("navigation", () => {
  it("walks pending spans in order and wraps", () => {
    const state = initialState("fixture", fixtureDocument());
    expect(nextPending(state, null)).toBe(1);
    expect(nextPending(state, 1)).toBe(6);
    expect(nextPending(state, 6)).toBe(8);
    expect(nextPending(state, 8)).toBe(1);
  });

  it("returns null when everything is resolved", () => {
    let state = initialState("fixture", fixtureDocument());
    state = applySelection(state, 1, { index: 0 });
    state = applySelection(state, 6, { index: 0 });
    state = applySelection(state, 8, { text: "tongue" });
    expect(nextPending(state, null)).toBeNull();
    expect(unresolvedSpans(state)).toHaveLength(0);
  });
});

describe("preview", () => {
  it("defaults ambiguous spans to the first-ranked candidate", () => {
    const state = initialState("fixture", fixtureDocument());
    expect(previewText(state)).toBe("the sin of pride and the pix and toung");
  });

  it("follows explicit selections", () => {
    let state = initialState("fixture", fixtureDocument());
    state = applySelection(state, 1, { index: 1 });
    expect(previewText(state)).toBe("the sine of pride and the pix and toung");
  });

  it("renders glosses only when asked", () => {
    const state = initialState("fixture", fixtureDocument());
    expect(previewText(state, true)).toContain(
      "pix (a box where the Holy Communion is kept)",
    );
    expect(previewText(state, false)).not.toContain("(a box");
  });

  it("includes manual overrides verbatim", () => {
    let state = initialState("fixture", fixtureDocument());
    state = applySelection(state, 8, { text: "tongue" });
    expect(previewText(state)).toBe("the sin of pride and the pix and tongue");
  });
});
