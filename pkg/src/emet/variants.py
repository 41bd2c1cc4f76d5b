"""Single-token recognition of unknown forms, verified against the lexicon.

Tokens that no dictionary layer knows are tried against three rule groups in
fixed order (suffix, then medial spelling variation, then prefix — the
groups sit at the conceptual priorities -1, -2 and -3).  Every produced
analysis is backed by a lexicon hit on the edited stem; nothing is guessed
blind, so a miss in all three groups leaves the token silent.

Rules live in a plain-text configuration file, one rule per line::

    suffix strip=eth emit=V+PR+3+s        # liveth -> live + 3rd sg present
    suffix strip=t emit=V+PP guard=consonant
    medial edit=drop_final_e              # poore -> poor
    medial edit=undouble                  # sinne -> sine
    medial suffix=s verify=N emit=N+p     # nunnes -> nunne + plural
    prefix strip=be                       # below'd -> be + love + 'd

``medial edit=swap:X:Y`` substitutes one occurrence of X by Y and is how
broader period spelling variation (u/v, i/j, y/i) can be switched on; the
bundled configuration leaves those lines commented out.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexicon import Analysis, LexiconSet

_VOWELS = set("aeiou")
_TENSE_TOKENS = frozenset({"PR", "PT", "PP", "G"})


class RuleConfigError(ValueError):
    """Malformed variant-rule configuration."""


@dataclass(frozen=True)
class SuffixRule:
    strip: str
    emit: frozenset[str]
    consonant_guard: bool = False


@dataclass(frozen=True)
class SegmentRule:
    suffix: str
    verify_pos: str
    emit: frozenset[str]


@dataclass
class RuleConfig:
    suffix_rules: list[SuffixRule] = field(default_factory=list)
    medial_edits: list[str] = field(default_factory=list)
    segment_rules: list[SegmentRule] = field(default_factory=list)
    prefixes: list[str] = field(default_factory=list)
    do_lemmas: set[str] = field(default_factory=set)
    do_blockers: set[str] = field(default_factory=set)
    soever_markers: set[str] = field(default_factory=set)


def parse_rules(text: str, source: str = "<string>") -> RuleConfig:
    config = RuleConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        group, pairs = fields[0], {}
        for item in fields[1:]:
            if "=" not in item:
                raise RuleConfigError(f"{source}:{lineno}: expected key=value, got {item!r}")
            key, value = item.split("=", 1)
            pairs[key] = value
        try:
            if group == "suffix":
                config.suffix_rules.append(
                    SuffixRule(
                        strip=pairs.pop("strip"),
                        emit=frozenset(pairs.pop("emit").split("+")),
                        consonant_guard=pairs.pop("guard", "") == "consonant",
                    )
                )
            elif group == "medial":
                if "edit" in pairs:
                    config.medial_edits.append(pairs.pop("edit"))
                else:
                    config.segment_rules.append(
                        SegmentRule(
                            suffix=pairs.pop("suffix"),
                            verify_pos=pairs.pop("verify"),
                            emit=frozenset(pairs.pop("emit").split("+")),
                        )
                    )
            elif group == "prefix":
                config.prefixes.append(pairs.pop("strip"))
            elif group == "do":
                if "lemma" in pairs:
                    config.do_lemmas.add(pairs.pop("lemma"))
                else:
                    config.do_blockers.add(pairs.pop("blocker"))
            elif group == "soever":
                config.soever_markers.add(pairs.pop("marker"))
            else:
                raise RuleConfigError(f"{source}:{lineno}: unknown rule group {group!r}")
        except KeyError as err:
            raise RuleConfigError(f"{source}:{lineno}: missing field {err}") from None
        if pairs:
            raise RuleConfigError(f"{source}:{lineno}: unused fields {sorted(pairs)}")
    return config


def load_rules(path) -> RuleConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh.read(), source=str(path))


# ----------------------------------------
# Stem repair and edit generation
# ----------------------------------------


def stem_repairs(stem: str) -> list[tuple[str, str]]:
    """Plausible restorations of a stem mangled by period spelling.

    Returns (form, tag) pairs: the stem itself, with a silent e restored,
    with a final doubled consonant reduced, and with a final single
    consonant re-doubled (covers omitted doublings like profes -> profess).
    """
    out = [(stem, "")]
    low = stem.casefold()
    if low and low[-1] not in _VOWELS and not low.endswith("e"):
        out.append((stem + "e", "+e"))
    if len(low) >= 2 and low[-1] == low[-2] and low[-1] not in _VOWELS:
        out.append((stem[:-1], "undouble"))
    if low and low[-1] not in _VOWELS and (len(low) < 2 or low[-1] != low[-2]):
        out.append((stem + stem[-1], "redouble"))
    if low.endswith("w"):
        # w stood for uu/vv: "low" and "lowe" both spelled "love"
        out.append((stem[:-1] + "ve", "w>ve"))
    return out


def _undouble_positions(token: str) -> list[str]:
    # any doubled letter: sinne -> sine, poore -> pore
    out = []
    low = token.casefold()
    for i in range(len(low) - 1):
        if low[i] == low[i + 1]:
            out.append(token[:i] + token[i + 1 :])
    return out


def _apply_edit(token: str, edit: str) -> list[str]:
    if edit == "drop_final_e":
        return [token[:-1]] if token.casefold().endswith("e") and len(token) > 2 else []
    if edit == "undouble":
        return _undouble_positions(token)
    if edit.startswith("swap:"):
        _, old, new = edit.split(":")
        return [
            token[:i] + new + token[i + len(old) :]
            for i in range(len(token))
            if token.casefold().startswith(old, i)
        ]
    raise RuleConfigError(f"unknown medial edit {edit!r}")


def medial_variants(token: str, config: RuleConfig) -> list[str]:
    """Token variants produced by at most one medial edit of each kind."""
    results: list[str] = []
    seen = {token.casefold()}

    def add(form: str):
        key = form.casefold()
        if key not in seen and len(form) >= 2:
            seen.add(key)
            results.append(form)

    singles: list[list[str]] = []
    for edit in config.medial_edits:
        forms = _apply_edit(token, edit)
        singles.append(forms)
        for f in forms:
            add(f)
    # pairwise composition of different edit kinds
    for i, edit_a in enumerate(config.medial_edits):
        for first in singles[i]:
            for edit_b in config.medial_edits[i + 1 :]:
                for second in _apply_edit(first, edit_b):
                    add(second)
    return results


# ----------------------------------------
# Verification against the lexicon
# ----------------------------------------


def _is_base_form(a: Analysis) -> bool:
    if "INF" in a.features:
        return True
    return not (a.features & _TENSE_TOKENS) and not (a.features & {"1", "2", "3"})


def verb_stem_analyses(stem: str, lex: LexiconSet) -> list[tuple[Analysis, str]]:
    """Lexicon verb readings of a repaired stem: (base analysis, repair tag).

    Repairs are tried in order and the first one that verifies wins; a stem
    the lexicon already knows as a verb is never second-guessed by further
    repairs (so a hidden-entry stem keeps exactly its high-priority reading).
    """
    for form, tag in stem_repairs(stem):
        hits = [
            (a, tag) for a in lex.lookup(form)
            if a.pos == "V" and _is_base_form(a) and not a.parts
        ]
        if hits:
            return hits
    return []


def _noun_is_base(a: Analysis) -> bool:
    return "p" not in a.features


def recognize_suffix(token: str, lex: LexiconSet, config: RuleConfig) -> list[Analysis]:
    """Archaic verb endings: -eth/-th third person, -est second, bare -t/-d participles."""
    out: list[Analysis] = []
    seen = set()
    low = token.casefold()
    for rule in config.suffix_rules:
        if not low.endswith(rule.strip) or len(low) - len(rule.strip) < 2:
            continue
        stem = token[: len(token) - len(rule.strip)]
        if rule.consonant_guard and stem.casefold()[-1] in _VOWELS:
            continue
        for base, repair in verb_stem_analyses(stem, lex):
            analysis = Analysis(
                surface=token,
                lemma=base.lemma,
                pos="V",
                features=rule.emit - {"V"},
                level=-1,
                source=f"suffix:-{rule.strip}" + (f"/{repair}" if repair else ""),
                flx=base.flx,
                en=base.en or base.lemma,
            )
            key = (analysis.lemma, analysis.features, analysis.en)
            if key not in seen:
                seen.add(key)
                out.append(analysis)
    return out


def recognize_spelling(token: str, lex: LexiconSet, config: RuleConfig) -> list[Analysis]:
    """Medial spelling variation, verified against the modern wordlist.

    The token is tried both as a base form (poore -> poor) and as an
    inflected form whose stem carries the variation (nunnes -> nunne + s ->
    nun, plural).  Every verified reading is returned; picking one is the
    validator's job.
    """
    out: list[Analysis] = []
    seen = set()

    def emit(a: Analysis):
        key = (a.lemma, a.pos, a.features, a.en)
        if key not in seen:
            seen.add(key)
            out.append(a)

    for form in medial_variants(token, config):
        seen_surfaces: set[tuple] = set()
        for a in lex.modern_lookup(form):
            if a.parts:
                continue
            key = (a.lemma, a.pos, form.casefold())
            if key in seen_surfaces:
                continue  # one reading per verified surface and category
            seen_surfaces.add(key)
            emit(
                Analysis(
                    surface=token,
                    lemma=a.lemma,
                    pos=a.pos,
                    features=a.features,
                    level=-2,
                    source="medial:base",
                    flx=a.flx,
                    en=a.lemma,
                )
            )

    low = token.casefold()
    for rule in config.segment_rules:
        if not low.endswith(rule.suffix) or len(low) - len(rule.suffix) < 2:
            continue
        stem = token[: len(token) - len(rule.suffix)]
        for form in [stem] + medial_variants(stem, config):
            for a in lex.modern_lookup(form, rule.verify_pos):
                if a.parts:
                    continue
                if rule.verify_pos == "N" and not _noun_is_base(a):
                    continue
                if rule.verify_pos == "V" and not _is_base_form(a):
                    continue
                emit(
                    Analysis(
                        surface=token,
                        lemma=a.lemma,
                        pos=rule.verify_pos,
                        features=rule.emit - {rule.verify_pos},
                        level=-2,
                        source=f"medial:-{rule.suffix}",
                        flx=a.flx,
                        en=a.lemma,
                    )
                )
    return out


def recognize_prefix(token: str, lex: LexiconSet, config: RuleConfig) -> list[Analysis]:
    """Prefixed verbs: strip a known prefix, verify the remainder as a verb."""
    out: list[Analysis] = []
    seen = set()
    low = token.casefold()
    for prefix in config.prefixes:
        if not low.startswith(prefix) or len(low) - len(prefix) < 2:
            continue
        remainder = token[len(prefix) :]
        for base, repair in verb_stem_analyses(remainder, lex):
            if repair not in ("", "+e", "w>ve"):
                continue
            analysis = Analysis(
                surface=token,
                lemma=base.lemma,
                pos="V",
                features=frozenset({"INF"}),
                level=-3,
                source=f"prefix:{prefix}-",
                flx=base.flx,
                en=base.en or base.lemma,
                prefix=prefix,
            )
            key = (analysis.lemma, analysis.en, analysis.prefix)
            if key not in seen:
                seen.add(key)
                out.append(analysis)
    return out


def recognize(token: str, lex: LexiconSet, config: RuleConfig) -> list[Analysis]:
    """Run the three groups in priority order; the first hit wins."""
    for recognizer in (recognize_suffix, recognize_spelling, recognize_prefix):
        analyses = recognizer(token, lex, config)
        if analyses:
            return analyses
    return []
