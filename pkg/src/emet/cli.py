"""Command-line interface.

    emet compile    [dictionary options]            check and report the lexicon
    emet transcribe INPUT [--format text|json|xml]  annotate / transcribe a file
    emet evaluate   INPUT --gold GOLD               score against a gold TSV
    emet serve      [--port N] --docs FILE...       local validation service

Dictionaries are given as ``--dict PATH@PRIORITY`` (repeatable) plus
``--modern-dict PATH@PRIORITY`` for contemporary wordlists; without any, the
bundled dictionaries are used.  Exit codes: 0 success, 1 runtime error
(missing input, gold mismatch), 2 configuration error (bad dictionary line,
duplicate priorities, unknown paradigm).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import defaults
from .evaluation import (
    GoldFileError,
    ambiguity_rate,
    evaluate_document,
    load_gold,
)
from .inflection import ParadigmError, load_paradigms
from .lexicon import DictionaryError, DictSource, LexiconSet, compile_lexicon
from .pipeline import apply_selections, export_json, export_xml, transcribe
from .variants import RuleConfig, RuleConfigError, load_rules

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2


@dataclass
class RunConfig:
    """Resolved run configuration: dictionaries, paradigms, rules, knobs."""

    sources: list[DictSource] = field(default_factory=list)
    paradigms_path: Path | None = None
    rules_path: Path | None = None
    max_passes: int = 4
    output_format: str = "text"
    port: int = 8017

    def load(self) -> tuple[LexiconSet, RuleConfig]:
        paradigms = (
            load_paradigms(self.paradigms_path)
            if self.paradigms_path
            else defaults.load_default_paradigms()
        )
        rules = load_rules(self.rules_path) if self.rules_path else defaults.load_default_rules()
        lex = compile_lexicon(self.sources, paradigms)
        return lex, rules


def _parse_dict_spec(spec: str, modern: bool) -> DictSource:
    path, sep, prio = spec.rpartition("@")
    if not sep:
        raise DictionaryError(f"dictionary spec {spec!r} needs PATH@PRIORITY")
    try:
        priority = int(prio)
    except ValueError:
        raise DictionaryError(f"bad priority {prio!r} in {spec!r}") from None
    return DictSource(path, priority, modern=modern)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dict", action="append", default=[], metavar="PATH@PRIO",
                        help="dictionary file and its priority level (repeatable)")
    parser.add_argument("--modern-dict", action="append", default=[], metavar="PATH@PRIO",
                        help="contemporary wordlist and its priority level (repeatable)")
    parser.add_argument("--paradigms", metavar="PATH", help="paradigm definition file")
    parser.add_argument("--rules", metavar="PATH", help="variant-rule configuration file")


def _resolve_config(args) -> RunConfig:
    config = RunConfig()
    if args.dict or args.modern_dict:
        for spec in args.dict:
            config.sources.append(_parse_dict_spec(spec, modern=False))
        for spec in args.modern_dict:
            config.sources.append(_parse_dict_spec(spec, modern=True))
    else:
        config.sources = defaults.default_sources()
    if not config.sources:
        raise DictionaryError("at least one dictionary is required")
    if args.paradigms:
        config.paradigms_path = Path(args.paradigms)
    if getattr(args, "rules", None):
        config.rules_path = Path(args.rules)
    if getattr(args, "max_passes", None) is not None:
        if args.max_passes < 1:
            raise DictionaryError("--max-passes must be >= 1")
        config.max_passes = args.max_passes
    return config


def cmd_compile(args) -> int:
    config = _resolve_config(args)
    lex, _ = config.load()
    if args.json:
        import json

        print(json.dumps(lex.stats(), indent=1))
    else:
        print(f"{len(lex.layers)} layers compiled")
        for row in lex.stats():
            print(
                f"  level {row['priority']:+d}  {row['name']:<12} "
                f"{row['entries']:5d} entries  {row['forms']:5d} forms  "
                f"{row['multiword']:3d} multiword"
            )
    return EXIT_OK


def cmd_transcribe(args) -> int:
    config = _resolve_config(args)
    path = Path(args.input)
    if not path.exists():
        print(f"input file not found: {path}", file=sys.stderr)
        return EXIT_RUNTIME
    lex, rules = config.load()
    doc = transcribe(path.read_text(encoding="utf-8"), lex, rules, max_passes=config.max_passes)
    doc.name = path.name
    if args.format == "text":
        out = apply_selections(doc, include_notes=args.include_notes)
        if not out.endswith("\n"):
            out += "\n"
    elif args.format == "json":
        out = export_json(doc) + "\n"
    else:
        out = export_xml(doc)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    config = _resolve_config(args)
    path = Path(args.input)
    if not path.exists():
        print(f"input file not found: {path}", file=sys.stderr)
        return EXIT_RUNTIME
    text = path.read_text(encoding="utf-8")
    lex, rules = config.load()
    try:
        gold = load_gold(args.gold, text)
        doc = transcribe(text, lex, rules, max_passes=config.max_passes)
        report = evaluate_document(doc, gold, oracle=args.oracle)
    except GoldFileError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    if args.json:
        print(report.to_json())
    else:
        mode = "oracle (any candidate counts)" if args.oracle else "auto-selection"
        print(f"mode: {mode}")
        print(report.table())
        print(f"ambiguity rate      {ambiguity_rate(doc):8.4f}")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import TranscriptionService, run

    config = _resolve_config(args)
    lex, rules = config.load()
    service = TranscriptionService(lex, rules, max_passes=config.max_passes)
    docs = args.docs or [str(defaults.mini_corpus_path())]
    bundled = defaults.data_dir()
    for spec in docs:
        path = Path(spec)
        if not path.exists():
            print(f"document not found: {path}", file=sys.stderr)
            return EXIT_RUNTIME
        sidecar = path.with_suffix(path.suffix + ".selections.json")
        if bundled in path.parents:
            sidecar = Path.cwd() / sidecar.name  # keep bundled data pristine
        service.add_document(path.stem, path.read_text(encoding="utf-8"), sidecar=sidecar)
    try:
        run(service, host=args.host, port=args.port, ui_dir=args.ui)
    except OSError as err:
        print(f"cannot serve on {args.host}:{args.port}: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emet",
        description="Transcribe Early Modern English into contemporary English.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile dictionaries and report layer statistics")
    _add_common(p)
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("transcribe", help="annotate and transcribe a text file")
    p.add_argument("input")
    _add_common(p)
    p.add_argument("--format", choices=("text", "json", "xml"), default="text")
    p.add_argument("--auto-select", action="store_true",
                   help="resolve every span to its first-ranked candidate (text output does this)")
    p.add_argument("--include-notes", action="store_true", help="render glosses in text output")
    p.add_argument("--max-passes", type=int, default=None)
    p.add_argument("-o", "--output", metavar="PATH")
    p.set_defaults(func=cmd_transcribe)

    p = sub.add_parser("evaluate", help="score a transcription against a gold TSV")
    p.add_argument("input")
    p.add_argument("--gold", required=True, metavar="PATH")
    _add_common(p)
    p.add_argument("--oracle", action="store_true",
                   help="count a span correct if any candidate matches gold")
    p.add_argument("--max-passes", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("serve", help="run the local validation service")
    _add_common(p)
    p.add_argument("--docs", nargs="*", metavar="PATH",
                   help="documents to serve (default: the bundled mini-corpus)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8017)
    p.add_argument("--ui", metavar="DIR", help="static directory with the validation UI")
    p.add_argument("--max-passes", type=int, default=None)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DictionaryError, ParadigmError, RuleConfigError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
