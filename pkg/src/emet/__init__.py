"""emet: rule-based transcription of Early Modern English into contemporary English."""

from .defaults import (
    load_default_lexicon,
    load_default_paradigms,
    load_default_rules,
)
from .evaluation import ScoreReport, evaluate_document, load_gold, score
from .grammar import Candidate
from .lexicon import Analysis, DictSource, LexEntry, LexiconSet, compile_lexicon, parse_entry
from .inflection import Paradigm, expand, inflect, load_paradigms, transfer
from .pipeline import (
    AnnotatedDocument,
    analyze,
    apply_selections,
    export_json,
    export_xml,
    import_json,
    import_xml,
    tokenize,
    transcribe,
)

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "AnnotatedDocument",
    "Candidate",
    "DictSource",
    "LexEntry",
    "LexiconSet",
    "Paradigm",
    "ScoreReport",
    "analyze",
    "apply_selections",
    "compile_lexicon",
    "evaluate_document",
    "expand",
    "export_json",
    "export_xml",
    "import_json",
    "import_xml",
    "inflect",
    "load_default_lexicon",
    "load_default_paradigms",
    "load_default_rules",
    "load_gold",
    "load_paradigms",
    "parse_entry",
    "score",
    "tokenize",
    "transcribe",
    "transfer",
]
