"""Inflection paradigms: tables of tail edit scripts keyed by feature bundles.

A paradigm maps a feature bundle (a set of tokens such as ``{"N", "p"}`` or
``{"V", "PR", "3", "s"}``) to an edit script applied to the tail of a lemma:
delete ``n`` characters, optionally double the final consonant, then append a
suffix.  Three operations are built on top:

  * :func:`inflect` — apply one rule to a lemma.
  * :func:`transfer` — re-inflect a different lemma with the inflectional
    features carried by a source form (tense, person, number), dropping
    semantic traits.
  * :func:`expand` — enumerate every (surface form, bundle) pair a paradigm
    generates for a lemma; this drives dictionary expansion.

Paradigm files are plain text.  A block starts with ``NAME:`` at column 0,
followed by indented rule lines ``BUNDLE[, BUNDLE...] = SCRIPT`` where BUNDLE
is a ``+``-joined list of feature tokens and SCRIPT is ``[-n][&]+suffix``
(``-n`` deletes n tail characters, ``&`` doubles the final consonant, ``+``
alone is the identity script).  ``NAME = OTHER`` at column 0 declares an
alias.  ``#`` starts a comment.

    Nsp:
        N+s = +
        N+p = +s

    SMILE = LIVE
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

# Tokens that participate in re-inflection; everything else in a feature set
# (semantic traits like Hum, Conc) is ignored by transfer.
POS_TOKENS = frozenset({"N", "V", "A", "ADV", "PRO", "CONJ", "PREP", "DET", "INTERJ"})
INFLECTIONAL_TOKENS = frozenset({"PR", "PT", "PP", "INF", "G", "1", "2", "3", "s", "p"})

_TOKEN_ORDER = {
    **{t: 0 for t in POS_TOKENS},
    "PR": 1, "PT": 1, "PP": 1, "INF": 1, "G": 1,
    "1": 2, "2": 2, "3": 2,
    "s": 3, "p": 3,
}


class ParadigmError(ValueError):
    """Raised for malformed paradigm files or inapplicable rules."""


def sort_features(features) -> list[str]:
    """Canonical display order: part of speech, tense, person, number, rest."""
    return sorted(features, key=lambda t: (_TOKEN_ORDER.get(t, 9), t))


def format_bundle(bundle) -> str:
    return "+".join(sort_features(bundle))


@dataclass(frozen=True)
class EditScript:
    """Tail edit: delete ``delete`` chars, maybe double the final one, append."""

    delete: int = 0
    append: str = ""
    double_final: bool = False

    def apply(self, lemma: str) -> str:
        if self.delete >= len(lemma):
            raise ParadigmError(
                f"edit script {self!r} deletes {self.delete} characters "
                f"from {lemma!r} (too short)"
            )
        stem = lemma[: len(lemma) - self.delete] if self.delete else lemma
        if self.double_final:
            stem += stem[-1]
        return stem + self.append

    def format(self) -> str:
        out = ""
        if self.delete:
            out += f"-{self.delete}"
        if self.double_final:
            out += "&"
        return out + "+" + self.append


_SCRIPT_RE = re.compile(r"^(?:-(\d+))?(&)?(?:\+(.*))?$")


def parse_script(text: str) -> EditScript:
    m = _SCRIPT_RE.match(text.strip())
    if m is None:
        raise ParadigmError(f"bad edit script: {text!r}")
    return EditScript(
        delete=int(m.group(1) or 0),
        append=m.group(3) or "",
        double_final=m.group(2) == "&",
    )


@dataclass
class Paradigm:
    """Named inflection table: feature bundle -> edit script (insertion order kept)."""

    name: str
    rules: dict[frozenset[str], EditScript] = field(default_factory=dict)

    def rule_for(self, bundle) -> EditScript:
        key = frozenset(bundle)
        if not key:
            return EditScript()  # the base form maps to the identity script
        try:
            return self.rules[key]
        except KeyError:
            raise ParadigmError(
                f"paradigm {self.name} has no rule for bundle {format_bundle(key)}"
            ) from None


def inflect(lemma: str, paradigm: Paradigm, features) -> str:
    """Apply the paradigm rule for ``features`` to ``lemma``."""
    return paradigm.rule_for(features).apply(lemma)


def project(features) -> frozenset[str]:
    """Keep only the part-of-speech and inflectional axes of a feature set."""
    return frozenset(t for t in features if t in POS_TOKENS or t in INFLECTIONAL_TOKENS)


def transfer(source_features, target_lemma: str, target_paradigm: Paradigm) -> str:
    """Inflect ``target_lemma`` with the inflectional features of a source form.

    This is the feature-transfer step behind word-for-word transcription: the
    source form contributes tense/person/number, the target lemma contributes
    the stem, and the target paradigm realizes the combination.
    """
    return inflect(target_lemma, target_paradigm, project(source_features))


def expand(lemma: str, paradigm: Paradigm) -> list[tuple[str, frozenset[str]]]:
    """All (form, bundle) pairs the paradigm generates for ``lemma``, deduplicated."""
    seen = set()
    out = []
    for bundle, script in paradigm.rules.items():
        form = script.apply(lemma)
        key = (form, bundle)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


# ----------------------------------------
# Paradigm file parsing / formatting
# ----------------------------------------

_HEADER_RE = re.compile(r"^(\w+)\s*:\s*$")
_ALIAS_RE = re.compile(r"^(\w+)\s*=\s*(\w+)\s*$")


def parse_paradigms(text: str, source: str = "<string>") -> dict[str, Paradigm]:
    """Parse a paradigm definition file into a name -> Paradigm table."""
    table: dict[str, Paradigm] = {}
    current: Paradigm | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indented = line[0].isspace()
        stripped = line.strip()
        if not indented:
            m = _HEADER_RE.match(stripped)
            if m:
                name = m.group(1)
                if name in table:
                    raise ParadigmError(f"{source}:{lineno}: duplicate paradigm {name}")
                current = Paradigm(name)
                table[name] = current
                continue
            m = _ALIAS_RE.match(stripped)
            if m:
                alias, target = m.groups()
                if target not in table:
                    raise ParadigmError(
                        f"{source}:{lineno}: alias {alias} targets unknown paradigm {target}"
                    )
                table[alias] = Paradigm(alias, dict(table[target].rules))
                current = None
                continue
            raise ParadigmError(f"{source}:{lineno}: expected 'NAME:' or 'NAME = OTHER'")
        if current is None:
            raise ParadigmError(f"{source}:{lineno}: rule line outside a paradigm block")
        if "=" not in stripped:
            raise ParadigmError(f"{source}:{lineno}: expected 'BUNDLE = SCRIPT'")
        left, right = stripped.split("=", 1)
        script = parse_script(right)
        for part in left.split(","):
            tokens = [t for t in part.strip().split("+") if t]
            if not tokens:
                raise ParadigmError(f"{source}:{lineno}: empty feature bundle")
            bundle = frozenset(tokens)
            if bundle in current.rules:
                raise ParadigmError(
                    f"{source}:{lineno}: duplicate bundle {format_bundle(bundle)} "
                    f"in paradigm {current.name}"
                )
            current.rules[bundle] = script
    return table


def format_paradigms(table: dict[str, Paradigm]) -> str:
    """Render a paradigm table back to file syntax (one bundle per rule line)."""
    blocks = []
    for name, paradigm in table.items():
        lines = [f"{name}:"]
        for bundle, script in paradigm.rules.items():
            lines.append(f"    {format_bundle(bundle)} = {script.format()}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def load_paradigms(path) -> dict[str, Paradigm]:
    with open(path, encoding="utf-8") as fh:
        return parse_paradigms(fh.read(), source=str(path))


_VOWELS = "aeiou"


def guess_paradigm(lemma: str, pos: str, table: dict[str, Paradigm]) -> Paradigm | None:
    """Pick a default paradigm for a lemma absent from the dictionaries.

    Covers the regular patterns only; irregular words need explicit entries.
    """
    low = lemma.casefold()
    if pos == "V":
        if low.endswith("y") and len(low) > 1 and low[-2] not in _VOWELS:
            name = "CRY"
        elif low.endswith("e"):
            name = "LIVE"
        elif low.endswith(("s", "x", "z", "ch", "sh")):
            name = "PASS"
        else:
            name = "HELP"
    elif pos == "N":
        if low.endswith(("s", "x", "z", "ch", "sh")):
            name = "Nsp_es"
        elif low.endswith("y") and len(low) > 1 and low[-2] not in _VOWELS:
            name = "Nsp_y"
        else:
            name = "Nsp"
    else:
        return None
    return table.get(name)
