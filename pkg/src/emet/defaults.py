"""Bundled dictionaries, paradigms, rules and the worked mini-corpus."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .inflection import Paradigm, load_paradigms
from .lexicon import DictSource, LexiconSet, compile_lexicon
from .variants import RuleConfig, load_rules


def data_dir() -> Path:
    return Path(str(resources.files("emet"))) / "data"


def default_sources(include_priority: bool = True) -> list[DictSource]:
    base = data_dir()
    sources = [
        DictSource(str(base / "archaic.dic"), priority=1, name="archaic"),
        DictSource(str(base / "modern.dic"), priority=0, modern=True, name="modern"),
    ]
    if include_priority:
        sources.insert(0, DictSource(str(base / "priority.dic"), priority=2, name="priority"))
    return sources


def load_default_paradigms() -> dict[str, Paradigm]:
    return load_paradigms(data_dir() / "paradigms.txt")


def load_default_rules() -> RuleConfig:
    return load_rules(data_dir() / "rules.conf")


def load_default_lexicon(include_priority: bool = True) -> LexiconSet:
    return compile_lexicon(default_sources(include_priority), load_default_paradigms())


def mini_corpus_path() -> Path:
    return data_dir() / "minicorpus.txt"


def mini_corpus_gold_path() -> Path:
    return data_dir() / "minicorpus.gold.tsv"
