"""Document pipeline: tokenize, analyze, transcribe in passes, apply choices.

A document moves through:

  1. :func:`tokenize` — words, numbers, punctuation; a trailing ``'d``/``'t``/
     ``'s`` becomes its own apostrophe-suffix token, a leading-apostrophe
     word (``'tis``) stays whole, hyphenated words stay whole.
  2. :func:`analyze` — per token: longest multiword entry first, then the
     dictionary layer cascade, then the variant groups; numbers and
     punctuation pass through.
  3. candidate generation — the grammar rules propose replacements; spans
     with two or more distinct proposals are ambiguous, spans no stage could
     analyze are unknown (left untouched).
  4. :func:`transcribe` — repeatedly applies the sole unambiguous proposals,
     re-tokenizes and re-analyzes the provisional text, and stops at a
     fixpoint or after ``max_passes`` rewriting passes.  ``pass_count`` is
     the number of passes that applied at least one rewrite.
  5. :func:`apply_selections` — produces the final text from the user's
     choices; unselected ambiguous spans fall back to the first-ranked
     candidate (with a warning), unknown spans pass through verbatim.

Replacement casing is restored from the source token, so a capitalized
archaic form yields a capitalized replacement.  Every applied rewrite and
every remaining span carries its character range in the *original* source
text, which is what the evaluation harness scores against.
"""

from __future__ import annotations

import dataclasses
import json
import re
from dataclasses import dataclass, field
from xml.etree import ElementTree as ET

from .grammar import (
    Candidate,
    TokenView,
    render_parts,
    resolve_elision,
    rewrite_do,
    rewrite_soever,
    rewrite_which_human,
    transcribe_word,
)
from .inflection import sort_features
from .lexicon import Analysis, LexiconSet
from .variants import RuleConfig, recognize

SCHEMA = "emet/document/1"

# ----------------------------------------
# Tokenization
# ----------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<number>\d+(?:[.,]\d+)*)"
    r"|(?P<word>['’]?[A-Za-z]+(?:[-'’][A-Za-z]+)*)"
    r"|(?P<punct>\S)"
)
_SUFFIX_RE = re.compile(r"['’][dts]$")


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int
    kind: str = "word"  # word | apos_suffix | punct | number
    casing: str = "lower"  # lower | capitalized | upper | mixed


def detect_casing(text: str) -> str:
    alpha = [c for c in text if c.isalpha()]
    if not alpha:
        return "lower"
    if all(c.islower() for c in alpha):
        return "lower"
    if all(c.isupper() for c in alpha):
        return "upper" if len(alpha) > 1 else "capitalized"
    if alpha[0].isupper() and all(c.islower() for c in alpha[1:]):
        return "capitalized"
    return "mixed"


def apply_casing(text: str, casing: str) -> str:
    if casing == "upper":
        return text.upper()
    if casing == "capitalized":
        for i, ch in enumerate(text):
            if ch.isalpha():
                return text[:i] + ch.upper() + text[i + 1 :]
    return text


def _word_token(text: str, start: int) -> Token:
    return Token(text, start, start + len(text), "word", detect_casing(text))


def tokenize(text: str) -> list[Token]:
    """Split text into tokens; offsets index into ``text`` so that slicing
    reproduces the source exactly."""
    tokens: list[Token] = []
    for m in _TOKEN_RE.finditer(text):
        if m.lastgroup == "number":
            tokens.append(Token(m.group(), m.start(), m.end(), "number"))
            continue
        if m.lastgroup == "punct":
            tokens.append(Token(m.group(), m.start(), m.end(), "punct"))
            continue
        word = m.group()
        suffix = _SUFFIX_RE.search(word)
        if suffix and suffix.start() > 0:
            stem = word[: suffix.start()]
            tokens.append(_word_token(stem, m.start()))
            tokens.append(
                Token(word[suffix.start() :], m.start() + suffix.start(), m.end(), "apos_suffix")
            )
        else:
            tokens.append(_word_token(word, m.start()))
    return tokens


# ----------------------------------------
# Document model
# ----------------------------------------


@dataclass
class Span:
    """One annotated stretch of the current text and its proposals."""

    token_start: int
    token_end: int
    start: int
    end: int
    text: str
    analyses: list[Analysis] = field(default_factory=list)
    candidates: list[Candidate] = field(default_factory=list)
    selected: int | None = None
    status: str = "plain"  # plain | archaic | ambiguous | unknown
    multiword: bool = False
    origin: tuple[int, int] = (0, 0)  # char range in the source text

    @property
    def ambiguous(self) -> bool:
        return len(self.candidates) >= 2


@dataclass
class AppliedRewrite:
    """A rewrite the pass loop committed into the provisional text."""

    origin: tuple[int, int]  # char range in the source text
    current: tuple[int, int]  # char range in the current text
    original: str
    text: str
    rule: str
    pass_no: int


@dataclass
class AnnotatedDocument:
    source_text: str
    current_text: str
    tokens: list[Token] = field(default_factory=list)
    spans: list[Span] = field(default_factory=list)
    applied: list[AppliedRewrite] = field(default_factory=list)
    pass_count: int = 0
    diagnostics: list[str] = field(default_factory=list)
    name: str = "document"

    def span_at(self, index: int) -> Span:
        if index < 0 or index >= len(self.spans):
            raise IndexError(f"no span {index} (document has {len(self.spans)})")
        return self.spans[index]


# ----------------------------------------
# Coordinate mapping current text -> source text
# ----------------------------------------


def _shift_before(pos: int, applied: list[AppliedRewrite]) -> int:
    shift = 0
    for rec in applied:
        if rec.current[1] <= pos:
            shift += (rec.current[1] - rec.current[0]) - (rec.origin[1] - rec.origin[0])
    return shift


def map_to_source(start: int, end: int, applied: list[AppliedRewrite]) -> tuple[int, int]:
    """Map a current-text range back to source coordinates.

    Positions inside an applied rewrite snap to that rewrite's full source
    range, so the result always covers whole rewritten regions.
    """
    src_a = None
    src_b = None
    for rec in applied:
        ca, cb = rec.current
        if ca < start < cb:
            src_a = rec.origin[0]
        if ca < end < cb:
            src_b = rec.origin[1]
    if src_a is None:
        src_a = start - _shift_before(start, applied)
    if src_b is None:
        src_b = end - _shift_before(end, applied)
    return (src_a, src_b)


# ----------------------------------------
# Analysis
# ----------------------------------------


def _default_rules() -> RuleConfig:
    from . import defaults

    return defaults.load_default_rules()


def analyze(text: str, lex: LexiconSet, rules: RuleConfig | None = None) -> AnnotatedDocument:
    """Tokenize and annotate: multiword entries, layer cascade, variant groups."""
    rules = rules or _default_rules()
    tokens = tokenize(text)
    texts = [t.text for t in tokens]
    doc = AnnotatedDocument(source_text=text, current_text=text, tokens=tokens)
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.kind != "word":
            i += 1
            continue
        hit = lex.match_multiword(texts, i)
        if hit is not None:
            length, analyses = hit
            last = tokens[i + length - 1]
            doc.spans.append(
                Span(i, i + length, tok.start, last.end, text[tok.start : last.end],
                     analyses=analyses, multiword=True)
            )
            i += length
            continue
        analyses = lex.lookup(tok.text)
        if not analyses:
            analyses = recognize(tok.text, lex, rules)
        span = Span(i, i + 1, tok.start, tok.end, tok.text, analyses=analyses)
        span.status = "plain" if analyses else "unknown"
        doc.spans.append(span)
        i += 1
    return doc


_STAGE_RANK = {"word": 1, "concat": 1, "contraction": 0, "expression": 1, "note": 3, "rewrite": 0}


def _rank_key(level: int, cand: Candidate):
    return (_STAGE_RANK.get(cand.kind, 2), -level, cand.text.casefold())


def _span_candidates(span: Span, lex: LexiconSet, diagnostics: list[str]) -> list[Candidate]:
    ranked: list[tuple[tuple, Candidate]] = []
    srange = (span.token_start, span.token_end)
    for a in span.analyses:
        if a.parts:
            cand = Candidate(srange, render_parts(a, lex), "contraction", f"contraction@{a.source}")
            if a.unamb:
                return [cand]  # the sole admissible reading of this surface
            ranked.append((_rank_key(a.level, cand), cand))
            continue
        if not a.has_recipe():
            continue
        cand = transcribe_word(a, lex, original=span.text, span=srange)
        if cand is None:
            diagnostics.append(
                f"suppressed: cannot re-inflect {a.en!r} for {span.text!r} ({a.source})"
            )
            continue
        if span.multiword and cand.kind == "word":
            cand = dataclasses.replace(cand, kind="concat")
        ranked.append((_rank_key(a.level, cand), cand))
    ranked.sort(key=lambda pair: pair[0])
    return [c for _, c in ranked]


def _dedupe(cands: list[Candidate]) -> list[Candidate]:
    out: list[Candidate] = []
    by_text: dict[str, int] = {}
    for c in cands:
        key = c.text.casefold()
        if key in by_text:
            prev = out[by_text[key]]
            if prev.requires_validation and not c.requires_validation:
                out[by_text[key]] = dataclasses.replace(prev, requires_validation=False)
            continue
        by_text[key] = len(out)
        out.append(c)
    return out


def generate_candidates(doc: AnnotatedDocument, lex: LexiconSet, rules: RuleConfig) -> None:
    """Fill every span's candidate list and overlay multi-token proposals."""
    tokens = doc.tokens
    span_of: dict[int, Span] = {}
    for span in doc.spans:
        for t in range(span.token_start, span.token_end):
            span_of[t] = span
    views = [
        TokenView(
            tok.text,
            span_of[i].analyses if i in span_of else [],
            is_word=tok.kind == "word",
        )
        for i, tok in enumerate(tokens)
    ]

    # per-span candidates (classes 1, 3, 4; class 2 concatenation for multiword spans)
    for span in doc.spans:
        span.candidates = _dedupe(_span_candidates(span, lex, doc.diagnostics))

    # class 2: stem + 'd / 't windows
    overlays: list[Span] = []
    for i, tok in enumerate(tokens):
        if tok.kind != "word" or i + 1 >= len(tokens):
            continue
        nxt = tokens[i + 1]
        if nxt.kind != "apos_suffix" or nxt.text[-1] not in "dt":
            continue
        cands = resolve_elision(tok.text, nxt.text, lex, rules, span=(i, i + 2))
        if cands:
            overlay = Span(i, i + 2, tok.start, nxt.end, doc.current_text[tok.start : nxt.end],
                           analyses=list(span_of[i].analyses) if i in span_of else [])
            overlay.candidates = _dedupe(cands)
            overlays.append(overlay)

    # class 5: sequence rewrites
    for i in range(len(tokens)):
        for rule_fn in (rewrite_soever, rewrite_do, rewrite_which_human):
            cand = rule_fn(views, i, lex, rules)
            if cand is None:
                continue
            a, b = cand.span
            overlay = Span(a, b, tokens[a].start, tokens[b - 1].end,
                           doc.current_text[tokens[a].start : tokens[b - 1].end])
            overlay.analyses = [x for t in range(a, b) if t in span_of for x in span_of[t].analyses]
            overlay.candidates = [cand]
            overlays.append(overlay)

    _merge_overlays(doc, overlays)

    for span in doc.spans:
        span.candidates = [
            dataclasses.replace(c, text=apply_casing(c.text, tokens[span.token_start].casing))
            for c in span.candidates
        ]
        span.candidates = [
            c for c in span.candidates if c.text != span.text or c.kind == "note"
        ]
        if span.candidates:
            span.status = "ambiguous" if len(span.candidates) >= 2 else "archaic"
        elif not span.analyses:
            span.status = "unknown"
        else:
            span.status = "plain"


def _merge_overlays(doc: AnnotatedDocument, overlays: list[Span]) -> None:
    """Longest proposal wins; equal ranges merge their candidate lists.

    An overlay that would cut through a base span (cover part of a multiword
    match, say) is dropped rather than allowed to produce overlapping spans.
    """
    overlays.sort(key=lambda s: (-(s.token_end - s.token_start), s.token_start))
    accepted: list[Span] = []
    for ov in overlays:
        clash = next(
            (x for x in accepted if x.token_start < ov.token_end and ov.token_start < x.token_end),
            None,
        )
        if clash is not None:
            if (clash.token_start, clash.token_end) == (ov.token_start, ov.token_end):
                clash.candidates = _dedupe(clash.candidates + ov.candidates)
            continue
        cuts_a_base_span = any(
            base.token_start < ov.token_end
            and ov.token_start < base.token_end
            and not (ov.token_start <= base.token_start and base.token_end <= ov.token_end)
            for base in doc.spans
        )
        if not cuts_a_base_span:
            accepted.append(ov)
    if not accepted:
        return
    kept: list[Span] = []
    for span in doc.spans:
        cover = next(
            (x for x in accepted
             if x.token_start <= span.token_start and span.token_end <= x.token_end),
            None,
        )
        if cover is None:
            kept.append(span)
        elif (cover.token_start, cover.token_end) == (span.token_start, span.token_end):
            cover.candidates = _dedupe(cover.candidates + span.candidates)
            if not cover.analyses:
                cover.analyses = span.analyses
    doc.spans = sorted(kept + accepted, key=lambda s: s.token_start)


# ----------------------------------------
# Multi-pass transcription
# ----------------------------------------


def _auto_applicable(span: Span) -> bool:
    if len(span.candidates) != 1:
        return False
    cand = span.candidates[0]
    return not cand.requires_validation and cand.kind != "note"


def transcribe(
    text: str,
    lex: LexiconSet,
    rules: RuleConfig | None = None,
    max_passes: int = 4,
) -> AnnotatedDocument:
    """Analyze and rewrite until nothing unambiguous is left to apply.

    Sole unflagged candidates are applied into the provisional text after
    each pass and the result is re-analyzed, so rewrites that depend on the
    output of earlier rewrites land on later passes.  Ambiguous and
    validation-flagged spans are held for :func:`apply_selections`.
    """
    if max_passes < 1:
        raise ValueError("max_passes must be >= 1")
    rules = rules or _default_rules()
    source = text
    current = text
    applied: list[AppliedRewrite] = []
    diagnostics: list[str] = []
    pass_count = 0
    while True:
        doc = analyze(current, lex, rules)
        doc.diagnostics = diagnostics
        generate_candidates(doc, lex, rules)
        autos = [s for s in doc.spans if _auto_applicable(s)]
        if not autos:
            break
        if pass_count >= max_passes:
            diagnostics.append(
                f"pass budget ({max_passes}) exhausted before reaching a fixpoint"
            )
            break
        pass_count += 1
        replacements = [
            (s.start, s.end, s.candidates[0].text, s.candidates[0].rule) for s in autos
        ]
        current, applied = _apply_replacements(source, current, applied, replacements, pass_count)
    doc.source_text = source
    doc.applied = applied
    doc.pass_count = pass_count
    for span in doc.spans:
        span.origin = map_to_source(span.start, span.end, applied)
    return doc


def _apply_replacements(
    source: str,
    current: str,
    applied: list[AppliedRewrite],
    replacements: list[tuple[int, int, str, str]],
    pass_no: int,
) -> tuple[str, list[AppliedRewrite]]:
    replacements = sorted(replacements)
    ordered = sorted(applied, key=lambda r: r.current)
    new_records: list[AppliedRewrite] = []
    for a, b, text, rule in replacements:
        origin = map_to_source(a, b, ordered)
        new_records.append(
            AppliedRewrite(
                origin=origin,
                current=(a, b),  # re-based below
                original=source[origin[0] : origin[1]],
                text=text,
                rule=rule,
                pass_no=pass_no,
            )
        )
    survivors = [
        r for r in ordered
        if not any(a < r.current[1] and r.current[0] < b for a, b, _, _ in replacements)
    ]
    pieces: list[str] = []
    pos = 0
    delta = 0
    for rec, (a, b, text, _) in zip(new_records, replacements):
        pieces.append(current[pos:a])
        rec.current = (a + delta, a + delta + len(text))
        pieces.append(text)
        delta += len(text) - (b - a)
        pos = b
    pieces.append(current[pos:])
    for r in survivors:
        shift = sum(
            len(text) - (b - a) for a, b, text, _ in replacements if b <= r.current[0]
        )
        r.current = (r.current[0] + shift, r.current[1] + shift)
    merged = sorted(survivors + new_records, key=lambda r: r.current)
    return "".join(pieces), merged


# ----------------------------------------
# Selection application
# ----------------------------------------


def apply_selections(
    doc: AnnotatedDocument,
    choices: dict[int, int] | None = None,
    include_notes: bool = False,
) -> str:
    """Final text: chosen candidates replace their spans.

    Explicit choices win; a span with a stored selection uses it; remaining
    candidate spans fall back to the first-ranked non-note candidate (a
    warning lands in ``doc.diagnostics``).  Unknown spans stay verbatim.
    """
    choices = choices or {}
    for index in choices:
        doc.span_at(index)  # raises on a bad span index
    replacements: list[tuple[int, int, str]] = []
    for index, span in enumerate(doc.spans):
        if not span.candidates:
            continue
        pick: int | None
        if index in choices:
            pick = choices[index]
            if not 0 <= pick < len(span.candidates):
                raise IndexError(
                    f"span {index} ({span.text!r}) has {len(span.candidates)} candidates, "
                    f"choice {pick} is out of range"
                )
        elif span.selected is not None:
            pick = span.selected
        else:
            pick = next(
                (i for i, c in enumerate(span.candidates)
                 if c.kind != "note" or include_notes),
                None,
            )
            if pick is None:
                continue
            if span.ambiguous:
                doc.diagnostics.append(
                    f"span {index} ({span.text!r}): defaulted to first-ranked candidate "
                    f"{span.candidates[pick].text!r}"
                )
        cand = span.candidates[pick]
        if cand.kind == "note" and not include_notes and index not in choices and span.selected is None:
            continue
        replacements.append((span.start, span.end, cand.text))
    out = doc.current_text
    for a, b, text in sorted(replacements, reverse=True):
        out = out[:a] + text + out[b:]
    return out


# ----------------------------------------
# Serialization (the shared document model)
# ----------------------------------------


def _analysis_to_obj(a: Analysis) -> dict:
    obj: dict = {
        "surface": a.surface,
        "lemma": a.lemma,
        "pos": a.pos,
        "features": sort_features(a.features),
        "level": a.level,
        "source": a.source,
    }
    for key in ("flx", "en", "replace", "note", "preinsert", "postinsert", "prefix"):
        value = getattr(a, key)
        if value is not None:
            obj[key] = value
    if a.unamb:
        obj["unamb"] = True
    if a.parts:
        obj["parts"] = [_analysis_to_obj(p) for p in a.parts]
    return obj


def _analysis_from_obj(obj: dict) -> Analysis:
    return Analysis(
        surface=obj["surface"],
        lemma=obj["lemma"],
        pos=obj["pos"],
        features=frozenset(obj.get("features", [])),
        level=obj.get("level", 0),
        source=obj.get("source", ""),
        flx=obj.get("flx"),
        en=obj.get("en"),
        replace=obj.get("replace"),
        note=obj.get("note"),
        preinsert=obj.get("preinsert"),
        postinsert=obj.get("postinsert"),
        prefix=obj.get("prefix"),
        parts=tuple(_analysis_from_obj(p) for p in obj.get("parts", [])),
        unamb=obj.get("unamb", False),
    )


def _candidate_to_obj(c: Candidate) -> dict:
    return {
        "span": list(c.span),
        "text": c.text,
        "kind": c.kind,
        "rule": c.rule,
        "requires_validation": c.requires_validation,
    }


def _candidate_from_obj(obj: dict) -> Candidate:
    return Candidate(
        span=tuple(obj["span"]),
        text=obj["text"],
        kind=obj["kind"],
        rule=obj["rule"],
        requires_validation=obj.get("requires_validation", False),
    )


def document_to_obj(doc: AnnotatedDocument) -> dict:
    return {
        "schema": SCHEMA,
        "name": doc.name,
        "source_text": doc.source_text,
        "current_text": doc.current_text,
        "pass_count": doc.pass_count,
        "diagnostics": list(doc.diagnostics),
        "spans": [
            {
                "id": i,
                "tokens": [s.token_start, s.token_end],
                "start": s.start,
                "end": s.end,
                "text": s.text,
                "status": s.status,
                "multiword": s.multiword,
                "origin": list(s.origin),
                "analyses": [_analysis_to_obj(a) for a in s.analyses],
                "candidates": [_candidate_to_obj(c) for c in s.candidates],
                "selected": s.selected,
            }
            for i, s in enumerate(doc.spans)
        ],
        "applied": [
            {
                "origin": list(r.origin),
                "current": list(r.current),
                "original": r.original,
                "text": r.text,
                "rule": r.rule,
                "pass": r.pass_no,
            }
            for r in doc.applied
        ],
    }


def document_from_obj(obj: dict) -> AnnotatedDocument:
    if obj.get("schema") != SCHEMA:
        raise ValueError(f"unsupported document schema {obj.get('schema')!r}")
    doc = AnnotatedDocument(
        source_text=obj["source_text"],
        current_text=obj["current_text"],
        tokens=tokenize(obj["current_text"]),
        pass_count=obj.get("pass_count", 0),
        diagnostics=list(obj.get("diagnostics", [])),
        name=obj.get("name", "document"),
    )
    for sobj in obj["spans"]:
        span = Span(
            token_start=sobj["tokens"][0],
            token_end=sobj["tokens"][1],
            start=sobj["start"],
            end=sobj["end"],
            text=sobj["text"],
            analyses=[_analysis_from_obj(a) for a in sobj.get("analyses", [])],
            candidates=[_candidate_from_obj(c) for c in sobj.get("candidates", [])],
            selected=sobj.get("selected"),
            status=sobj.get("status", "plain"),
            multiword=sobj.get("multiword", False),
            origin=tuple(sobj.get("origin", (0, 0))),
        )
        if span.selected is not None and not 0 <= span.selected < len(span.candidates):
            raise ValueError(
                f"span {sobj.get('id')} stores selection {span.selected} "
                f"but has {len(span.candidates)} candidates"
            )
        doc.spans.append(span)
    for robj in obj.get("applied", []):
        doc.applied.append(
            AppliedRewrite(
                origin=tuple(robj["origin"]),
                current=tuple(robj["current"]),
                original=robj["original"],
                text=robj["text"],
                rule=robj["rule"],
                pass_no=robj["pass"],
            )
        )
    return doc


def export_json(doc: AnnotatedDocument) -> str:
    return json.dumps(document_to_obj(doc), ensure_ascii=False, sort_keys=True, indent=1)


def import_json(text: str) -> AnnotatedDocument:
    return document_from_obj(json.loads(text))


def export_xml(doc: AnnotatedDocument) -> str:
    root = ET.Element("document", schema=SCHEMA, name=doc.name, passes=str(doc.pass_count))
    ET.SubElement(root, "source").text = doc.source_text
    ET.SubElement(root, "current").text = doc.current_text
    for line in doc.diagnostics:
        ET.SubElement(root, "diagnostic").text = line
    for rec in doc.applied:
        el = ET.SubElement(
            root, "applied",
            {"origin-start": str(rec.origin[0]), "origin-end": str(rec.origin[1]),
             "start": str(rec.current[0]), "end": str(rec.current[1]),
             "rule": rec.rule, "pass": str(rec.pass_no)},
        )
        ET.SubElement(el, "original").text = rec.original
        ET.SubElement(el, "text").text = rec.text
    for i, span in enumerate(doc.spans):
        attrs = {
            "id": str(i),
            "token-start": str(span.token_start), "token-end": str(span.token_end),
            "start": str(span.start), "end": str(span.end),
            "origin-start": str(span.origin[0]), "origin-end": str(span.origin[1]),
            "status": span.status,
        }
        if span.multiword:
            attrs["multiword"] = "true"
        if span.selected is not None:
            attrs["selected"] = str(span.selected)
        el = ET.SubElement(root, "span", attrs)
        ET.SubElement(el, "original").text = span.text
        for a in span.analyses:
            el.append(_analysis_to_xml(a))
        for c in span.candidates:
            cattrs = {"kind": c.kind, "rule": c.rule}
            if c.requires_validation:
                cattrs["requires-validation"] = "true"
            if c.kind == "note":
                note = next((x.note for x in span.analyses if x.note is not None), None)
                if note is not None:
                    cattrs["gloss"] = note
            cel = ET.SubElement(el, "candidate", cattrs)
            cel.text = c.text
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


def _analysis_to_xml(a: Analysis) -> ET.Element:
    attrs = {
        "surface": a.surface,
        "lemma": a.lemma,
        "pos": a.pos,
        "features": "+".join(sort_features(a.features)),
        "level": str(a.level),
        "source": a.source,
    }
    for key in ("flx", "en", "replace", "note", "preinsert", "postinsert", "prefix"):
        value = getattr(a, key)
        if value is not None:
            attrs[key] = value
    if a.unamb:
        attrs["unamb"] = "true"
    el = ET.Element("analysis", attrs)
    for part in a.parts:
        el.append(_analysis_to_xml(part))
    return el


def _analysis_from_xml(el: ET.Element) -> Analysis:
    return Analysis(
        surface=el.get("surface", ""),
        lemma=el.get("lemma", ""),
        pos=el.get("pos", ""),
        features=frozenset(t for t in el.get("features", "").split("+") if t),
        level=int(el.get("level", "0")),
        source=el.get("source", ""),
        flx=el.get("flx"),
        en=el.get("en"),
        replace=el.get("replace"),
        note=el.get("note"),
        preinsert=el.get("preinsert"),
        postinsert=el.get("postinsert"),
        prefix=el.get("prefix"),
        parts=tuple(_analysis_from_xml(p) for p in el.findall("analysis")),
        unamb=el.get("unamb") == "true",
    )


def import_xml(text: str) -> AnnotatedDocument:
    root = ET.fromstring(text)
    if root.get("schema") != SCHEMA:
        raise ValueError(f"unsupported document schema {root.get('schema')!r}")
    current = root.findtext("current") or ""
    doc = AnnotatedDocument(
        source_text=root.findtext("source") or "",
        current_text=current,
        tokens=tokenize(current),
        pass_count=int(root.get("passes", "0")),
        diagnostics=[el.text or "" for el in root.findall("diagnostic")],
        name=root.get("name", "document"),
    )
    for el in root.findall("applied"):
        doc.applied.append(
            AppliedRewrite(
                origin=(int(el.get("origin-start")), int(el.get("origin-end"))),
                current=(int(el.get("start")), int(el.get("end"))),
                original=el.findtext("original") or "",
                text=el.findtext("text") or "",
                rule=el.get("rule", ""),
                pass_no=int(el.get("pass", "0")),
            )
        )
    for el in root.findall("span"):
        span = Span(
            token_start=int(el.get("token-start")),
            token_end=int(el.get("token-end")),
            start=int(el.get("start")),
            end=int(el.get("end")),
            text=el.findtext("original") or "",
            analyses=[_analysis_from_xml(a) for a in el.findall("analysis")],
            status=el.get("status", "plain"),
            multiword=el.get("multiword") == "true",
            origin=(int(el.get("origin-start", "0")), int(el.get("origin-end", "0"))),
            selected=int(el.get("selected")) if el.get("selected") is not None else None,
        )
        for cel in el.findall("candidate"):
            span.candidates.append(
                Candidate(
                    span=(span.token_start, span.token_end),
                    text=cel.text or "",
                    kind=cel.get("kind", "word"),
                    rule=cel.get("rule", ""),
                    requires_validation=cel.get("requires-validation") == "true",
                )
            )
        doc.spans.append(span)
    return doc
