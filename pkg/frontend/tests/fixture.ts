import type { DocumentObj, SpanObj } from "../src/types";

export function span(partial: Partial<SpanObj> & { id: number }): SpanObj {
  return {
    tokens: [partial.id, partial.id + 1],
    start: 0,
    end: 0,
    text: "",
    status: "plain",
    multiword: false,
    origin: [0, 0],
    analyses: [],
    candidates: [],
    selected: null,
    ...partial,
  };
}

/** "the sinne of pride and the pix and toung" with one ambiguous span,
 * one note span and one unknown span. */
export function fixtureDocument(): DocumentObj {
  const text = "the sinne of pride and the pix and toung";
  return {
    schema: "emet/document/1",
    name: "fixture",
    source_text: text,
    current_text: text,
    pass_count: 0,
    diagnostics: [],
    applied: [],
    spans: [
      span({ id: 0, start: 0, end: 3, text: "the", origin: [0, 3] }),
      span({
        id: 1,
        start: 4,
        end: 9,
        text: "sinne",
        status: "ambiguous",
        origin: [4, 9],
        candidates: [
          { span: [1, 2], text: "sin", kind: "word", rule: "medial:base", requires_validation: false },
          { span: [1, 2], text: "sine", kind: "word", rule: "medial:base", requires_validation: false },
        ],
      }),
      span({ id: 2, start: 10, end: 12, text: "of", origin: [10, 12] }),
      span({ id: 3, start: 13, end: 18, text: "pride", origin: [13, 18] }),
      span({ id: 4, start: 19, end: 22, text: "and", origin: [19, 22] }),
      span({ id: 5, start: 23, end: 26, text: "the", origin: [23, 26] }),
      span({
        id: 6,
        start: 27,
        end: 30,
        text: "pix",
        status: "archaic",
        origin: [27, 30],
        analyses: [
          {
            surface: "pix", lemma: "pix", pos: "N", features: ["s"], level: 1,
            source: "dict:archaic", note: "a box where the Holy Communion is kept",
          },
        ],
        candidates: [
          {
            span: [6, 7],
            text: "pix (a box where the Holy Communion is kept)",
            kind: "note",
            rule: "note@dict:archaic",
            requires_validation: true,
          },
        ],
      }),
      span({ id: 7, start: 31, end: 34, text: "and", origin: [31, 34] }),
      span({ id: 8, start: 35, end: 40, text: "toung", status: "unknown", origin: [35, 40] }),
    ],
  };
}
