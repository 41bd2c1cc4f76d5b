/** The shared document model served by the engine (schema emet/document/1). */

export const DOCUMENT_SCHEMA = "emet/document/1";

export interface AnalysisObj {
  surface: string;
  lemma: string;
  pos: string;
  features: string[];
  level: number;
  source: string;
  flx?: string;
  en?: string;
  replace?: string;
  note?: string;
  preinsert?: string;
  postinsert?: string;
  prefix?: string;
  unamb?: boolean;
  parts?: AnalysisObj[];
}

export interface CandidateObj {
  span: [number, number];
  text: string;
  kind: string; // word | concat | contraction | expression | rewrite | note | manual
  rule: string;
  requires_validation: boolean;
}

export type SpanStatus = "plain" | "archaic" | "ambiguous" | "unknown";

export interface SpanObj {
  id: number;
  tokens: [number, number];
  start: number;
  end: number;
  text: string;
  status: SpanStatus;
  multiword: boolean;
  origin: [number, number];
  analyses: AnalysisObj[];
  candidates: CandidateObj[];
  selected: number | null;
}

export interface AppliedObj {
  origin: [number, number];
  current: [number, number];
  original: string;
  text: string;
  rule: string;
  pass: number;
}

export interface DocumentObj {
  schema: string;
  name: string;
  source_text: string;
  current_text: string;
  pass_count: number;
  diagnostics: string[];
  spans: SpanObj[];
  applied: AppliedObj[];
}

export interface DocumentSummary {
  id: string;
  spans: number;
  ambiguous: number;
  unknown: number;
  pending: number;
}

export interface SelectionAck {
  ok: boolean;
  span: { id: number; selected: number; candidates: string[] };
  counts: { spans: number; ambiguous: number; unknown: number; pending: number };
}
