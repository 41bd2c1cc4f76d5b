"""Scoring: precision, recall and F-measure against a gold transcription.

The gold standard is a TSV file, one entity per line::

    start <TAB> end <TAB> original text <TAB> gold transcription

Offsets are character positions in the source document; an entity is a
maximal source span requiring transcription (a multiword rewrite counts as
one entity).  A system entity is correct when both its source span and its
transcription match the gold entry exactly (whitespace-normalized,
case-sensitive).  Precision is correct/proposed, recall is correct/gold,
F is their harmonic mean; all three are defined as 0 instead of undefined
when a denominator vanishes, so reports are total.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .pipeline import AnnotatedDocument


class GoldFileError(ValueError):
    """Malformed gold file, reported with line numbers."""


@dataclass(frozen=True)
class GoldEntry:
    start: int
    end: int
    original: str
    transcription: str


@dataclass
class GoldStandard:
    source_sha256: str
    entries: list[GoldEntry]


@dataclass(frozen=True)
class ScoreReport:
    n_auto: int
    n_gold: int
    n_correct: int
    precision: float
    recall: float
    f_measure: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "auto": self.n_auto,
                "gold": self.n_gold,
                "correct": self.n_correct,
                "precision": self.precision,
                "recall": self.recall,
                "f_measure": self.f_measure,
            },
            indent=1,
        )

    def table(self) -> str:
        lines = [
            f"proposed entities   {self.n_auto:6d}",
            f"gold entities       {self.n_gold:6d}",
            f"correct             {self.n_correct:6d}",
            f"precision           {self.precision:8.4f}",
            f"recall              {self.recall:8.4f}",
            f"f-measure           {self.f_measure:8.4f}",
        ]
        return "\n".join(lines)


def f_measure(precision: float, recall: float) -> float:
    if precision + recall <= 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def make_report(n_auto: int, n_gold: int, n_correct: int) -> ScoreReport:
    precision = n_correct / n_auto if n_auto else 0.0
    recall = n_correct / n_gold if n_gold else 0.0
    return ScoreReport(n_auto, n_gold, n_correct, precision, recall, f_measure(precision, recall))


def _normalize(text: str) -> str:
    return " ".join(text.split())


def score(system: list[tuple[int, int, str]], gold) -> ScoreReport:
    """Score (start, end, transcription) triples against the gold entries."""
    entries = gold.entries if isinstance(gold, GoldStandard) else list(gold)
    gold_map = {(e.start, e.end): _normalize(e.transcription) for e in entries}
    if len(gold_map) != len(entries):
        raise GoldFileError("gold spans are not unique")
    n_correct = 0
    for start, end, text in system:
        expected = gold_map.get((start, end))
        if expected is not None and expected == _normalize(text):
            n_correct += 1
    return make_report(len(system), len(entries), n_correct)


def source_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def load_gold(path, source_text: str) -> GoldStandard:
    """Parse and validate a gold TSV against the document it annotates."""
    entries: list[tuple[int, GoldEntry]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise GoldFileError(f"{path}:{lineno}: expected 4 tab-separated fields")
            try:
                start, end = int(fields[0]), int(fields[1])
            except ValueError:
                raise GoldFileError(f"{path}:{lineno}: offsets must be integers") from None
            if not 0 <= start < end <= len(source_text):
                raise GoldFileError(f"{path}:{lineno}: span {start}..{end} out of bounds")
            if source_text[start:end] != fields[2]:
                raise GoldFileError(
                    f"{path}:{lineno}: source reads {source_text[start:end]!r}, "
                    f"gold file says {fields[2]!r}"
                )
            entries.append((lineno, GoldEntry(start, end, fields[2], fields[3])))
    by_start = sorted(entries, key=lambda pair: pair[1].start)
    for (line_a, a), (line_b, b) in zip(by_start, by_start[1:]):
        if b.start < a.end:
            raise GoldFileError(
                f"{path}: overlapping gold spans on lines {line_a} and {line_b}"
            )
    return GoldStandard(source_digest(source_text), [e for _, e in entries])


# ----------------------------------------
# Scoring a pipeline document
# ----------------------------------------


def system_entities(doc: AnnotatedDocument, gold: GoldStandard | None = None,
                    oracle: bool = False) -> list[tuple[int, int, str]]:
    """Entities the system proposes, in source coordinates.

    Applied rewrites count with their final text.  Held spans contribute
    their selected candidate, or the first-ranked one.  In oracle mode a
    held span contributes whichever candidate matches the gold entry, if
    any — an upper bound on achievable accuracy.
    """
    gold_map = {}
    if gold is not None:
        gold_map = {(e.start, e.end): _normalize(e.transcription) for e in gold.entries}
    out: list[tuple[int, int, str]] = []
    for rec in doc.applied:
        out.append((rec.origin[0], rec.origin[1], rec.text))
    for span in doc.spans:
        texts = [c.text for c in span.candidates if c.kind != "note"]
        if not texts:
            continue
        if span.selected is not None and span.selected < len(span.candidates):
            chosen = span.candidates[span.selected].text
        else:
            chosen = texts[0]
            if oracle:
                expected = gold_map.get(span.origin)
                if expected is not None:
                    chosen = next((t for t in texts if _normalize(t) == expected), chosen)
        out.append((span.origin[0], span.origin[1], chosen))
    return sorted(out)


def evaluate_document(doc: AnnotatedDocument, gold: GoldStandard, oracle: bool = False) -> ScoreReport:
    if source_digest(doc.source_text) != gold.source_sha256:
        raise GoldFileError("gold file does not annotate this source text (hash mismatch)")
    return score(system_entities(doc, gold, oracle=oracle), gold)


def ambiguity_rate(doc: AnnotatedDocument) -> float:
    """Share of proposal-bearing spans that carried more than one candidate."""
    held = [s for s in doc.spans if s.candidates]
    entities = len(doc.applied) + len(held)
    if entities == 0:
        return 0.0
    return sum(1 for s in held if len(s.candidates) >= 2) / entities
