"""Priority-layered lexicons compiled from attribute-tagged dictionary files.

Dictionary file format (UTF-8, one entry per line, ``#`` comments):

    surface,POS(+KEY=VALUE | +FEATURE)*
    surface,lemma,POS(+KEY=VALUE | +FEATURE)*

The two-field form implies ``lemma == surface``.  Values may be double
quoted.  Recognized keys:

    FLX=NAME          inflection paradigm; the entry is expanded into every
                      surface form the paradigm generates (N, V, A only)
    EN=LEMMA          contemporary lemma; re-inflected with the features the
                      matched form carries
    REPLACE=EXPR      literal replacement expression (excludes EN)
    NOTE=TEXT         parenthetical gloss; the word itself is kept
    PREINSERT=FORM    invariable form prepended (with a space)
    POSTINSERT=FORM   invariable form appended (with a space)
    PREFIX=FORM       prefix concatenated, without a space, onto the EN form

``Tense=X``, ``Nb=X`` and ``Person=X`` normalize to the bare feature token
``X``; any other bare token is kept as a feature (``PR``, ``3``, ``s``,
semantic traits such as ``Hum``, ...).  ``UNAMB`` marks the entry as the
sole reading of its surface.  A contraction entry lists its underlying words
in angle brackets:

    'tis,<it,it,PRO+3+n+s+Part1+EN=it> <is,be,V+PR+3+s+Part2+EN=be>+UNAMB

Each file compiles into one layer of a :class:`LexiconSet` at the priority
given by its :class:`DictSource`.  Lookup walks layers from the highest
priority down and stops at the first layer that knows the form, so a small
high-priority dictionary hides entries below it.  Surfaces containing a
space or hyphen go into a separate multiword table keyed by first token.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .inflection import (
    POS_TOKENS,
    Paradigm,
    ParadigmError,
    expand,
    guess_paradigm,
    inflect,
    project,
    sort_features,
)

# Attribute keys carrying a transcription recipe, in canonical output order.
RECIPE_KEYS = ("FLX", "EN", "REPLACE", "NOTE", "PREINSERT", "POSTINSERT", "PREFIX")

# KEY=VALUE pairs that normalize to a bare feature token.
_FEATURE_KEYS = {"TENSE", "NB", "PERSON", "PERS"}


def index_key(form: str) -> str:
    """Case-folded index key; typographic apostrophes match typewriter ones."""
    return form.casefold().replace("’", "'")


class DictionaryError(ValueError):
    """Malformed dictionary input, reported with file and line when known."""

    def __init__(self, message: str, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        where = ""
        if source is not None:
            where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


@dataclass(frozen=True)
class LexEntry:
    """One dictionary line.  ``parts`` holds the sub-entries of a contraction."""

    surface: str
    lemma: str
    pos: str
    features: frozenset[str] = frozenset()
    flx: str | None = None
    en: str | None = None
    replace: str | None = None
    note: str | None = None
    preinsert: str | None = None
    postinsert: str | None = None
    prefix: str | None = None
    parts: tuple[LexEntry, ...] = ()
    unamb: bool = False
    priority: int = 0

    def __post_init__(self):
        if self.en is not None and self.replace is not None:
            raise DictionaryError(f"{self.surface}: EN and REPLACE are exclusive")
        if self.parts and any(
            v is not None
            for v in (self.en, self.replace, self.preinsert, self.postinsert, self.prefix)
        ):
            raise DictionaryError(
                f"{self.surface}: a contraction entry transcribes through its parts"
            )
        if self.flx is not None and self.pos not in ("N", "V", "A"):
            raise DictionaryError(f"{self.surface}: FLX on non-inflectable class {self.pos}")
        if self.prefix is not None and self.en is None:
            raise DictionaryError(f"{self.surface}: PREFIX requires EN")

    @property
    def is_multiword(self) -> bool:
        return " " in self.surface or "-" in self.surface


@dataclass(frozen=True)
class Analysis:
    """One reading of a surface form: lemma, category, features and recipe."""

    surface: str
    lemma: str
    pos: str
    features: frozenset[str] = frozenset()
    level: int = 0
    source: str = ""
    flx: str | None = None
    en: str | None = None
    replace: str | None = None
    note: str | None = None
    preinsert: str | None = None
    postinsert: str | None = None
    prefix: str | None = None
    parts: tuple[Analysis, ...] = ()
    unamb: bool = False

    @property
    def bundle(self) -> frozenset[str]:
        """Features plus the part-of-speech token, as paradigms key them."""
        return self.features | {self.pos}

    def has_recipe(self) -> bool:
        return any(
            v is not None
            for v in (self.en, self.replace, self.note, self.preinsert, self.postinsert, self.prefix)
        ) or bool(self.parts)


# ----------------------------------------
# Entry line parsing
# ----------------------------------------


def _split_quoted(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside double quotes; raise on an unbalanced quote."""
    parts: list[str] = []
    buf: list[str] = []
    in_quote = False
    for ch in text:
        if ch == '"':
            in_quote = not in_quote
            buf.append(ch)
        elif ch == sep and not in_quote:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    if in_quote:
        raise DictionaryError("unbalanced quotes")
    parts.append("".join(buf))
    return parts


def _unquote(value: str) -> str:
    value = value.strip()
    if len(value) >= 2 and value[0] == '"' and value[-1] == '"':
        return value[1:-1]
    return value


def _parse_body(surface: str, body: str, part_role: int | None = None) -> LexEntry:
    """Parse everything after the surface: ``[lemma,]POS+attributes``."""
    fields = _split_quoted(body, ",")
    head = fields[0]
    lemma = surface
    if len(fields) > 1:
        # three-field form: the first field is an explicit lemma
        lemma = _unquote(fields[0])
        head = ",".join(fields[1:])
        if "," in head:
            raise DictionaryError(f"too many fields in {surface!r}")
    tokens = _split_quoted(head, "+")
    pos = tokens[0].strip()
    if pos not in POS_TOKENS:
        raise DictionaryError(f"unknown part-of-speech tag {pos!r}")
    features: list[str] = []
    keyed: dict[str, str] = {}
    unamb = False
    expected_part = None
    for raw in tokens[1:]:
        tok = raw.strip()
        if not tok:
            continue
        if "=" in tok:
            key, value = tok.split("=", 1)
            key = key.strip().upper()
            if key in _FEATURE_KEYS:
                features.append(_unquote(value))
                continue
            if key in keyed:
                raise DictionaryError(f"duplicate attribute key {key}")
            keyed[key] = _unquote(value)
            continue
        if tok == "UNAMB":
            unamb = True
        elif tok in ("Part1", "Part2"):
            expected_part = int(tok[-1])
        else:
            features.append(tok)
    if part_role is not None and expected_part not in (None, part_role):
        raise DictionaryError(f"{surface!r} marked Part{expected_part}, expected Part{part_role}")
    unknown = set(keyed) - set(RECIPE_KEYS)
    # unrecognized keys are kept as inert trait features
    for key in sorted(unknown):
        features.append(f"{key}={keyed.pop(key)}")
    return LexEntry(
        surface=surface,
        lemma=lemma,
        pos=pos,
        features=frozenset(features),
        flx=keyed.get("FLX"),
        en=keyed.get("EN"),
        replace=keyed.get("REPLACE"),
        note=keyed.get("NOTE"),
        preinsert=keyed.get("PREINSERT"),
        postinsert=keyed.get("POSTINSERT"),
        prefix=keyed.get("PREFIX"),
        unamb=unamb,
    )


def _parse_parts(surface: str, body: str) -> LexEntry:
    """Parse a contraction body: ``<...> <...>(+flags)``."""
    parts: list[LexEntry] = []
    rest = body
    tail = ""
    while rest:
        rest = rest.lstrip()
        if not rest.startswith("<"):
            tail = rest
            break
        close = rest.find(">")
        if close < 0:
            raise DictionaryError(f"unclosed part in {surface!r}")
        inner = rest[1:close]
        sub_fields = _split_quoted(inner, ",")
        if len(sub_fields) < 3:
            raise DictionaryError(f"a part needs surface, lemma and category: {inner!r}")
        parts.append(_parse_body(sub_fields[0].strip(), ",".join(sub_fields[1:]), len(parts) + 1))
        rest = rest[close + 1 :]
    unamb = False
    for tok in tail.split("+"):
        tok = tok.strip()
        if not tok:
            continue
        if tok == "UNAMB":
            unamb = True
        else:
            raise DictionaryError(f"unexpected trailing token {tok!r} on contraction {surface!r}")
    if len(parts) < 2:
        raise DictionaryError(f"contraction {surface!r} needs at least two parts")
    return LexEntry(
        surface=surface,
        lemma=surface,
        pos=parts[0].pos,
        parts=tuple(parts),
        unamb=unamb,
    )


def parse_entry(line: str, source: str | None = None, lineno: int | None = None) -> LexEntry | None:
    """Parse one dictionary line; ``None`` for blank and comment lines."""
    text = line.strip()
    if not text or text.startswith("#"):
        return None
    try:
        fields = _split_quoted(text, ",")
        if len(fields) < 2:
            raise DictionaryError(f"missing category in {text!r}")
        surface = fields[0].strip()
        if not surface:
            raise DictionaryError("empty surface form")
        body = ",".join(fields[1:]).strip()
        if body.startswith("<"):
            return _parse_parts(surface, body)
        return _parse_body(surface, body)
    except DictionaryError as err:
        raise DictionaryError(str(err), source=source, line=lineno) from None


def _format_value(value: str) -> str:
    if value == "" or any(ch in value for ch in " ,+"):
        return f'"{value}"'
    return value


def format_entry(entry: LexEntry) -> str:
    """Render an entry back to line syntax; inverse of :func:`parse_entry`."""
    if entry.parts:
        inner = " ".join(
            "<%s>" % _format_part(part, i + 1) for i, part in enumerate(entry.parts)
        )
        return f"{entry.surface},{inner}" + ("+UNAMB" if entry.unamb else "")
    return f"{entry.surface},{_format_body(entry)}"


def _format_body(entry: LexEntry, lemma_always: bool = False) -> str:
    out = ""
    if lemma_always or entry.lemma != entry.surface:
        out += f"{entry.lemma},"
    out += entry.pos
    if entry.flx is not None:
        out += f"+FLX={_format_value(entry.flx)}"
    for feat in sort_features(entry.features):
        out += f"+{feat}"
    for key in ("EN", "REPLACE", "NOTE", "PREINSERT", "POSTINSERT", "PREFIX"):
        value = getattr(entry, key.lower())
        if value is not None:
            out += f"+{key}={_format_value(value)}"
    if entry.unamb:
        out += "+UNAMB"
    return out


def _format_part(part: LexEntry, role: int) -> str:
    body = _format_body(part, lemma_always=True)
    # the role marker sits after the features, before the recipe keys
    head, sep, tail = body.partition("+EN=")
    if sep:
        return f"{part.surface},{head}+Part{role}{sep}{tail}"
    return f"{part.surface},{body}+Part{role}"


# ----------------------------------------
# Compilation
# ----------------------------------------


@dataclass(frozen=True)
class DictSource:
    """One dictionary file to compile: where it lives and which layer it feeds."""

    path: str
    priority: int
    modern: bool = False
    name: str | None = None

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        base = str(self.path).rsplit("/", 1)[-1]
        return base.rsplit(".", 1)[0]


@dataclass
class MultiwordEntry:
    tokens: tuple[str, ...]  # casefolded token texts of the surface
    analyses: list[Analysis]


@dataclass
class Layer:
    priority: int
    name: str
    index: dict[str, list[Analysis]] = field(default_factory=dict)
    multiword: dict[str, list[MultiwordEntry]] = field(default_factory=dict)
    entries: list[LexEntry] = field(default_factory=list)


class LexiconSet:
    """Compiled, immutable-by-convention stack of dictionary layers.

    ``layers`` is sorted by descending priority.  ``modern_index`` collects
    the surface forms of the modern (contemporary-English) sources and is the
    verification oracle for the variant recognizers.  ``realization`` maps
    (lemma, pos, inflectional bundle) to the contemporary surface spelling
    and backs feature-transfer rendering, including irregular full forms.
    """

    def __init__(self, layers: list[Layer], paradigms: dict[str, Paradigm]):
        priorities = [layer.priority for layer in layers]
        if len(set(priorities)) != len(priorities):
            raise DictionaryError("two layers with equal priority")
        self.layers = sorted(layers, key=lambda l: -l.priority)
        self.paradigms = paradigms
        self.modern_index: dict[str, list[Analysis]] = {}
        self.realization: dict[tuple[str, str, frozenset[str]], str] = {}

    def lookup(self, token: str) -> list[Analysis]:
        """All analyses from the highest-priority layer that knows the form."""
        key = index_key(token)
        for layer in self.layers:
            hits = layer.index.get(key)
            if hits:
                return list(hits)
        return []

    def lookup_level(self, token: str) -> int | None:
        key = index_key(token)
        for layer in self.layers:
            if layer.index.get(key):
                return layer.priority
        return None

    def match_multiword(self, tokens: list[str], start: int) -> tuple[int, list[Analysis]] | None:
        """Longest multiword entry matching ``tokens[start:]``, searched top layer first."""
        first = index_key(tokens[start])
        for layer in self.layers:
            best: tuple[int, list[Analysis]] | None = None
            for cand in layer.multiword.get(first, ()):
                n = len(cand.tokens)
                if start + n > len(tokens):
                    continue
                window = tuple(index_key(t) for t in tokens[start : start + n])
                if window == cand.tokens:
                    if best is None or n > best[0]:
                        best = (n, list(cand.analyses))
                    elif n == best[0]:
                        best[1].extend(cand.analyses)
            if best is not None:
                return best
        return None

    def modern_lookup(self, form: str, pos: str | None = None) -> list[Analysis]:
        hits = self.modern_index.get(index_key(form), [])
        if pos is None:
            return list(hits)
        return [a for a in hits if a.pos == pos]

    def realize(self, lemma: str, pos: str, features) -> str | None:
        """Contemporary surface for ``lemma`` carrying ``features``.

        Tries the realization index built from the modern sources (which
        covers irregular full forms), then falls back to paradigm guessing.
        """
        bundle = project(set(features) | {pos})
        hit = self.realization.get((index_key(lemma), pos, bundle))
        if hit is not None:
            return hit
        paradigm = guess_paradigm(lemma, pos, self.paradigms)
        if paradigm is None:
            return None
        try:
            return inflect(lemma, paradigm, bundle)
        except ParadigmError:
            return None

    def stats(self) -> list[dict]:
        out = []
        for layer in self.layers:
            out.append(
                {
                    "priority": layer.priority,
                    "name": layer.name,
                    "entries": len(layer.entries),
                    "forms": sum(len(v) for v in layer.index.values()),
                    "multiword": sum(len(v) for v in layer.multiword.values()),
                }
            )
        return out


def _tokenize_surface(surface: str) -> tuple[str, ...]:
    # matches the pipeline tokenizer for the word shapes dictionaries use:
    # split on spaces, keep hyphenated words whole
    return tuple(index_key(t) for t in surface.split())


def _entry_analyses(
    entry: LexEntry, priority: int, source: str, paradigms: dict[str, Paradigm]
) -> list[tuple[str, Analysis]]:
    """(surface form, analysis) pairs for one entry, paradigm-expanded."""

    def make(surface: str, features: frozenset[str]) -> Analysis:
        return Analysis(
            surface=surface,
            lemma=entry.lemma,
            pos=entry.pos,
            features=features,
            level=priority,
            source=source,
            flx=entry.flx,
            en=entry.en,
            replace=entry.replace,
            note=entry.note,
            preinsert=entry.preinsert,
            postinsert=entry.postinsert,
            prefix=entry.prefix,
            parts=tuple(
                Analysis(
                    surface=p.surface,
                    lemma=p.lemma,
                    pos=p.pos,
                    features=p.features,
                    level=priority,
                    source=source,
                    en=p.en,
                )
                for p in entry.parts
            ),
            unamb=entry.unamb,
        )

    if entry.flx is None:
        return [(entry.surface, make(entry.surface, entry.features))]
    paradigm = paradigms.get(entry.flx)
    if paradigm is None:
        raise DictionaryError(f"{entry.surface}: unknown paradigm name {entry.flx}", source=source)
    out = []
    for form, bundle in expand(entry.lemma, paradigm):
        features = (bundle - {entry.pos}) | entry.features
        out.append((form, make(form, frozenset(features))))
    return out


def compile_lexicon(sources, paradigms: dict[str, Paradigm]) -> LexiconSet:
    """Compile dictionary files into a layered, surface-indexed lexicon set.

    ``sources`` is an iterable of :class:`DictSource` (or (path, priority)
    tuples).  Each source becomes one layer; the modern-flagged sources also
    feed the verification and realization indexes.
    """
    normalized: list[DictSource] = []
    for src in sources:
        if isinstance(src, DictSource):
            normalized.append(src)
        else:
            normalized.append(DictSource(*src))
    seen_priorities: dict[int, str] = {}
    for src in normalized:
        if src.priority in seen_priorities:
            raise DictionaryError(
                f"{src.label} and {seen_priorities[src.priority]} both claim "
                f"priority {src.priority}"
            )
        seen_priorities[src.priority] = src.label

    layers: list[Layer] = []
    modern_layers: list[Layer] = []
    for src in normalized:
        layer = Layer(priority=src.priority, name=src.label)
        with open(src.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                entry = parse_entry(line, source=str(src.path), lineno=lineno)
                if entry is None:
                    continue
                entry = dataclasses.replace(entry, priority=src.priority)
                layer.entries.append(entry)
                tag = f"dict:{src.label}"
                try:
                    pairs = _entry_analyses(entry, src.priority, tag, paradigms)
                except DictionaryError as err:
                    raise DictionaryError(str(err), source=str(src.path), line=lineno) from None
                if entry.is_multiword:
                    tokens = _tokenize_surface(entry.surface)
                    slot = layer.multiword.setdefault(tokens[0], [])
                    hit = next((m for m in slot if m.tokens == tokens), None)
                    if hit is None:
                        hit = MultiwordEntry(tokens=tokens, analyses=[])
                        slot.append(hit)
                    hit.analyses.extend(a for _, a in pairs)
                    if len(tokens) == 1:
                        # hyphen-only surfaces are single tokens too
                        for form, analysis in pairs:
                            layer.index.setdefault(index_key(form), []).append(analysis)
                else:
                    for form, analysis in pairs:
                        layer.index.setdefault(index_key(form), []).append(analysis)
        layers.append(layer)
        if src.modern:
            modern_layers.append(layer)

    lex = LexiconSet(layers, paradigms)
    for layer in modern_layers:
        for key, analyses in layer.index.items():
            lex.modern_index.setdefault(key, []).extend(analyses)
        for analyses in layer.index.values():
            for a in analyses:
                rkey = (index_key(a.lemma), a.pos, project(a.bundle))
                lex.realization.setdefault(rkey, a.surface)
    return lex
