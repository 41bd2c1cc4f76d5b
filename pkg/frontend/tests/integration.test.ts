/**
 * End-to-end flow against the real engine: start the Python service on the
 * bundled mini-corpus, resolve every pending span with the gold answer
 * (picker for candidates, free-text override for unknown spans), and check
 * that the export equals the gold transcription and matches the client-side
 * preview byte for byte.
 */

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { copyFileSync, mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { applySelection, initialState, previewText, type ReviewState } from "../src/state";
import { DOCUMENT_SCHEMA } from "../src/types";

const PYTHON = process.env.PYTHON ?? "python3";

interface GoldEntry {
  start: number;
  end: number;
  original: string;
  transcription: string;
}

function paths(): { corpus: string; gold: string } {
  const out = execFileSync(
    PYTHON,
    ["-c", "from emet.defaults import *; print(mini_corpus_path()); print(mini_corpus_gold_path())"],
    { encoding: "utf-8" },
  );
  const [corpus, gold] = out.trim().split("\n");
  return { corpus, gold };
}

function parseGold(path: string): GoldEntry[] {
  return readFileSync(path, "utf-8")
    .split("\n")
    .filter((line) => line.trim() && !line.startsWith("#"))
    .map((line) => {
      const [start, end, original, transcription] = line.split("\t");
      return { start: Number(start), end: Number(end), original, transcription };
    });
}

function applyGold(source: string, entries: GoldEntry[]): string {
  let out = source;
  for (const entry of [...entries].sort((a, b) => b.start - a.start)) {
    out = out.slice(0, entry.start) + entry.transcription + out.slice(entry.end);
  }
  return out;
}

let child: ChildProcess | null = null;
let base = "";
let workdir = "";

beforeAll(async () => {
  const { corpus } = paths();
  workdir = mkdtempSync(join(tmpdir(), "emet-ui-"));
  copyFileSync(corpus, join(workdir, "minicorpus.txt"));
  child = spawn(
    PYTHON,
    ["-m", "emet.cli", "serve", "--port", "0", "--docs", join(workdir, "minicorpus.txt")],
    { stdio: ["ignore", "pipe", "inherit"] },
  );
  base = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("service did not start")), 30000);
    child!.stdout!.on("data", (chunk: Buffer) => {
      const match = /on (http:\/\/[^/ ]+)\//.exec(chunk.toString());
      if (match) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
  });
});

afterAll(() => {
  child?.kill();
  if (workdir) rmSync(workdir, { recursive: true, force: true });
});

describe("validation flow on the mini-corpus", () => {
  it("resolving every span reproduces the gold transcription", async () => {
    const api = new ApiClient(base);
    const documents = await api.listDocuments();
    expect(documents).toHaveLength(1);
    const id = documents[0].id;

    const doc = await api.getDocument(id);
    expect(doc.schema).toBe(DOCUMENT_SCHEMA);

    const { gold } = paths();
    const entries = parseGold(gold);
    const wanted = new Map(entries.map((e) => [`${e.start}:${e.end}`, e.transcription]));
    const alreadyApplied = new Set(doc.applied.map((r) => `${r.origin[0]}:${r.origin[1]}`));

    let state: ReviewState = initialState(id, doc);
    let overrides = 0;
    for (const span of doc.spans) {
      const key = `${span.origin[0]}:${span.origin[1]}`;
      const goal = wanted.get(key);
      if (goal === undefined || alreadyApplied.has(key)) continue;
      if (span.candidates.length > 0) {
        const index = span.candidates.findIndex((c) => c.text === goal);
        expect(index, `no candidate ${goal} for ${span.text}`).toBeGreaterThanOrEqual(0);
        await api.submitSelection(id, span.id, { index });
        state = applySelection(state, span.id, { index });
      } else {
        await api.submitSelection(id, span.id, { text: goal });
        state = applySelection(state, span.id, { text: goal });
        overrides += 1;
      }
    }
    expect(overrides).toBe(2); // the two deliberate silences

    const exported = await api.getExport(id);
    expect(exported).toBe(applyGold(doc.source_text, entries));
    // the client-side preview and the service export are the same text
    expect(previewText(state)).toBe(exported);
    // free-text overrides appear verbatim
    expect(exported).toContain("his tongue was strange");
    expect(exported).toContain("fattened");
  }, 60000);

  it("rejected selections report a reason", async () => {
    const api = new ApiClient(base);
    const [summary] = await api.listDocuments();
    await expect(
      api.submitSelection(summary.id, 0, { index: 99 }),
    ).rejects.toMatchObject({ status: 422 });
  });
});
