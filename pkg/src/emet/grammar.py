"""Transcription candidates: from analyses and token windows to replacement text.

Five families of rewrites are produced here:

  1. word for word — an analysis carrying a contemporary lemma (EN) or a
     literal expression (REPLACE), re-inflected with the features the
     archaic form carried;
  2. concatenation — multiword entries ("my self", "where-ever") and elided
     participles split across a stem token and an apostrophe suffix
     ("allow'd", "long-hair'd");
  3. contraction splitting — entries that describe their underlying words
     ("'tis" -> "it is");
  4. expression building — PREINSERT / POSTINSERT / PREFIX / NOTE around the
     re-inflected head word;
  5. sequence rewrites — periphrastic *do*, the "(of) what ... soever"
     permutations, and *which* -> *who* after a human antecedent.

All functions are pure; they never mutate the lexicon and identical inputs
give identical outputs.  Candidates that merely reproduce the original text
are suppressed by the pipeline, not here.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .inflection import project
from .lexicon import Analysis, LexiconSet
from .variants import RuleConfig, recognize_prefix, verb_stem_analyses

APOSTROPHES = "'’"


@dataclass(frozen=True)
class Candidate:
    """One proposed replacement for a token span."""

    span: tuple[int, int]  # token index range, end exclusive
    text: str
    kind: str  # word | concat | contraction | expression | rewrite | note | manual
    rule: str
    requires_validation: bool = False


@dataclass
class TokenView:
    """What the rewrite patterns see of one token: its text and analyses."""

    text: str
    analyses: list[Analysis]
    is_word: bool = True


# ----------------------------------------
# Class 1 and 4: word-for-word and expressions
# ----------------------------------------

_BASE_BUNDLES = (frozenset(), frozenset({"INF"}), frozenset({"s"}))


def _render_en(a: Analysis, lex: LexiconSet) -> str | None:
    """Contemporary form of the EN lemma carrying the analysis' features."""
    bundle = project(a.bundle)
    inflectional = bundle - {a.pos}
    form = lex.realize(a.en, a.pos, bundle)
    if form is None:
        if inflectional in _BASE_BUNDLES or a.pos not in ("N", "V", "A"):
            form = a.en  # invariable word or base form: the lemma is the form
        else:
            return None
    return form


def transcribe_word(a: Analysis, lex: LexiconSet, original: str = "", span=(0, 1)) -> Candidate | None:
    """Render one analysis' transcription recipe, or ``None`` when it fails.

    REPLACE substitutes a literal expression; EN re-inflects the contemporary
    lemma; PREFIX-/PREINSERT-/POSTINSERT decorate it; NOTE keeps the original
    word and appends a parenthetical gloss.
    """
    if a.replace is not None:
        return Candidate(span, a.replace, "expression", f"replace@{a.source}")
    if a.en is not None:
        form = _render_en(a, lex)
        if form is None:
            return None
        kind = "word"
        if a.prefix is not None:
            form = a.prefix + form
        if a.preinsert is not None:
            form = a.preinsert + " " + form
            kind = "expression"
        if a.postinsert is not None:
            form = form + " " + a.postinsert
            kind = "expression"
        if a.note is not None:
            form = f"{form} ({a.note})"
        return Candidate(span, form, kind, f"word@{a.source}")
    if a.note is not None:
        base = original or a.surface
        return Candidate(span, f"{base} ({a.note})", "note", f"note@{a.source}", requires_validation=True)
    return None


# ----------------------------------------
# Class 2: disjoint forms and elided participles
# ----------------------------------------


def concat_disjoint(tokens: list[str], start: int, lex: LexiconSet) -> Candidate | None:
    """Longest multiword entry starting at ``tokens[start]``, rendered."""
    hit = lex.match_multiword(tokens, start)
    if hit is None:
        return None
    length, analyses = hit
    for a in analyses:
        if a.en is None:
            continue
        cand = transcribe_word(a, lex, span=(start, start + length))
        if cand is not None:
            return replace(cand, kind="concat", rule=f"concat@{a.source}")
    return None


def resolve_elision(stem: str, suffix: str, lex: LexiconSet, config: RuleConfig | None = None,
                    span=(0, 2)) -> list[Candidate]:
    """Readings of ``stem`` + ``'d``/``'t`` as a past participle or -ed compound.

    Verb readings come first: a lexicon verb stem (repaired for period
    spelling) yields the past participle of its contemporary lemma; a stem
    only recognizable as a prefixed verb goes through the prefix rules.  A
    stem that is a noun or adjective (hyphenated compounds included) yields
    stem + "ed".  When both verb and nominal readings survive, everything is
    flagged for validation.
    """
    if suffix and suffix[0] in APOSTROPHES:
        suffix = suffix[1:]
    if suffix not in ("d", "t"):
        return []
    verb_texts: list[tuple[str, str]] = []
    for base, repair in verb_stem_analyses(stem, lex):
        target = base.en or base.lemma
        pp = lex.realize(target, "V", {"V", "PP"})
        if pp is None:
            continue
        text = (base.prefix or "") + pp
        verb_texts.append((text, f"elision@{base.source}" + (f"/{repair}" if repair else "")))
    if not verb_texts and config is not None:
        # the stem's own annotation gave no verb; re-read it as a prefixed verb
        for a in recognize_prefix(stem, lex, config):
            pp = lex.realize(a.en, "V", {"V", "PP"})
            if pp is not None:
                verb_texts.append(((a.prefix or "") + pp, f"elision@{a.source}"))

    nominal_texts: list[tuple[str, str]] = []
    check = stem.rsplit("-", 1)[-1]
    for a in lex.lookup(check):
        if a.pos in ("N", "A") and "p" not in a.features and not a.parts:
            nominal_texts.append((stem + "ed", f"elision+ed@{a.source}"))
            break

    polycategorial = bool(verb_texts) and bool(nominal_texts)
    out: list[Candidate] = []
    seen: set[str] = set()
    for text, rule in verb_texts + nominal_texts:
        if text.casefold() in seen:
            continue
        seen.add(text.casefold())
        out.append(Candidate(span, text, "word", rule, requires_validation=polycategorial))
    return out


# ----------------------------------------
# Class 3: contractions
# ----------------------------------------


def render_parts(a: Analysis, lex: LexiconSet) -> str:
    """Space-joined contemporary forms of a contraction's parts."""
    words = []
    for part in a.parts:
        target = part.en or part.lemma
        form = lex.realize(target, part.pos, part.bundle)
        words.append(form if form is not None else part.surface)
    return " ".join(words)


def split_contraction(token: str, lex: LexiconSet, span=(0, 1)) -> Candidate | None:
    """Candidate for a token described as two (or more) underlying words."""
    for a in lex.lookup(token):
        if a.parts:
            return Candidate(span, render_parts(a, lex), "contraction", f"contraction@{a.source}")
    return None


# ----------------------------------------
# Class 5: sequence rewrites
# ----------------------------------------


def _verb_analyses(view: TokenView) -> list[Analysis]:
    return [a for a in view.analyses if a.pos == "V" and not a.parts]


def _infinitive_target(view: TokenView) -> Analysis | None:
    for a in _verb_analyses(view):
        if "INF" in a.features:
            return a
    return None


def rewrite_do(views: list[TokenView], i: int, lex: LexiconSet, config: RuleConfig) -> Candidate | None:
    """Fold non-emphatic do/does/did + infinitive into a simple tense."""
    view = views[i]
    if not view.is_word:
        return None
    do_analyses = [
        a for a in _verb_analyses(view)
        if a.lemma.casefold() in config.do_lemmas and a.features & {"PR", "PT"}
    ]
    if not do_analyses or i + 1 >= len(views):
        return None
    nxt = views[i + 1]
    if not nxt.is_word or nxt.text.casefold() in config.do_blockers:
        return None
    target = _infinitive_target(nxt)
    if target is None:
        return None
    lemma = target.en or target.lemma
    for a in do_analyses:
        folded = lex.realize(lemma, "V", project(a.bundle))
        if folded is not None:
            return Candidate(
                (i, i + 2), folded, "rewrite", "rewrite:do",
                requires_validation=True,  # emphatic readings cannot be told apart
            )
    return None


def _is_adjectival(view: TokenView) -> bool:
    for a in view.analyses:
        if a.pos == "A":
            return True
        if a.pos == "V" and "PP" in a.features:
            return True
    return False


def _is_noun(view: TokenView) -> bool:
    return any(a.pos == "N" and not a.parts for a in view.analyses)


def rewrite_soever(views: list[TokenView], i: int, lex: LexiconSet, config: RuleConfig) -> Candidate | None:
    """Permute the concessive *soever* patterns.

    Pattern A:  "of what" NOUN [or|and NOUN] soever  ->  "whatever his" NOUNs
    Pattern B:  "how" ADJ soever                     ->  "however" ADJ
    """
    view = views[i]
    if not view.is_word:
        return None
    word = view.text.casefold()
    if word == "of":
        if i + 3 >= len(views) or views[i + 1].text.casefold() != "what":
            return None
        j = i + 2
        if not (views[j].is_word and _is_noun(views[j])):
            return None
        nouns = [views[j].text]
        j += 1
        if (
            j + 1 < len(views)
            and views[j].is_word
            and views[j].text.casefold() in ("or", "and")
            and views[j + 1].is_word
            and _is_noun(views[j + 1])
        ):
            nouns.extend([views[j].text, views[j + 1].text])
            j += 2
        if j >= len(views) or views[j].text.casefold() not in config.soever_markers:
            return None
        return Candidate((i, j + 1), "whatever his " + " ".join(nouns), "rewrite", "rewrite:soever-np")
    if word == "how":
        if i + 2 >= len(views):
            return None
        adj, marker = views[i + 1], views[i + 2]
        if not (adj.is_word and _is_adjectival(adj)):
            return None
        if marker.text.casefold() not in config.soever_markers:
            return None
        return Candidate((i, i + 3), "however " + adj.text, "rewrite", "rewrite:soever-adj")
    return None


def rewrite_which_human(views: list[TokenView], i: int, lex: LexiconSet,
                        config: RuleConfig | None = None) -> Candidate | None:
    """Replace relative *which* by *who* after a noun with the Hum trait."""
    view = views[i]
    if not view.is_word or view.text.casefold() != "which":
        return None
    j = i - 1
    if j >= 0 and not views[j].is_word and views[j].text == ",":
        j -= 1
    if j < 0 or not views[j].is_word:
        return None
    if not any(a.pos == "N" and "Hum" in a.features for a in views[j].analyses):
        return None
    return Candidate((i, i + 1), "who", "rewrite", "rewrite:which-human", requires_validation=True)
