"""Local JSON-over-HTTP service backing the validation workbench.

Endpoints (all JSON unless noted):

    GET  /api/documents                      document list with progress counts
    GET  /api/documents/{id}                 full annotated document model
    POST /api/documents/{id}/selections      {"span": i, "index": j}
                                             or {"span": i, "text": "override"}
    GET  /api/documents/{id}/export          {"text": final transcription}
                                             (?include_notes=1 renders glosses)

Anything outside /api is served from the static UI directory when one is
configured.  The service is loopback-only by default and keeps all state in
memory; selections are additionally persisted to a JSON sidecar per document
and replayed on startup, so a restart reproduces the same export.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .grammar import Candidate
from .lexicon import LexiconSet
from .pipeline import (
    AnnotatedDocument,
    apply_selections,
    document_to_obj,
    transcribe,
)
from .variants import RuleConfig


class SelectionError(ValueError):
    """Rejected selection: unknown span or out-of-range candidate."""


@dataclass
class DocumentState:
    doc: AnnotatedDocument
    sidecar: Path | None = None
    log: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def counts(self) -> dict:
        spans = self.doc.spans
        return {
            "spans": len(spans),
            "ambiguous": sum(1 for s in spans if s.status == "ambiguous"),
            "unknown": sum(1 for s in spans if s.status == "unknown"),
            "pending": sum(
                1 for s in spans
                if s.candidates and s.selected is None and s.status in ("ambiguous", "archaic")
            ),
        }


class TranscriptionService:
    """Holds the compiled lexicon and the annotated documents being validated."""

    def __init__(self, lex: LexiconSet, rules: RuleConfig, max_passes: int = 4):
        self.lex = lex
        self.rules = rules
        self.max_passes = max_passes
        self.documents: dict[str, DocumentState] = {}

    def add_document(self, name: str, text: str, sidecar: Path | None = None) -> DocumentState:
        doc = transcribe(text, self.lex, self.rules, max_passes=self.max_passes)
        doc.name = name
        state = DocumentState(doc=doc, sidecar=Path(sidecar) if sidecar else None)
        self.documents[name] = state
        if state.sidecar and state.sidecar.exists():
            for record in json.loads(state.sidecar.read_text(encoding="utf-8")):
                try:
                    self._apply(state, record, persist=False)
                except SelectionError:
                    pass  # the document changed since the sidecar was written
        return state

    def list_documents(self) -> list[dict]:
        return [
            {"id": name, **state.counts()} for name, state in sorted(self.documents.items())
        ]

    def get(self, name: str) -> DocumentState:
        try:
            return self.documents[name]
        except KeyError:
            raise SelectionError(f"unknown document {name!r}") from None

    def select(self, name: str, record: dict) -> dict:
        state = self.get(name)
        with state.lock:
            span = self._apply(state, record, persist=True)
        return {
            "ok": True,
            "span": span,
            "counts": state.counts(),
        }

    def _apply(self, state: DocumentState, record: dict, persist: bool) -> dict:
        doc = state.doc
        index = record.get("span")
        if not isinstance(index, int) or not 0 <= index < len(doc.spans):
            raise SelectionError(f"no span {index!r}")
        span = doc.spans[index]
        if "text" in record and record["text"] is not None:
            text = str(record["text"])
            if not text.strip():
                raise SelectionError("empty override text")
            manual = next(
                (i for i, c in enumerate(span.candidates)
                 if c.kind == "manual" and c.text == text),
                None,
            )
            if manual is None:
                span.candidates.append(
                    Candidate(
                        span=(span.token_start, span.token_end),
                        text=text,
                        kind="manual",
                        rule="user:override",
                    )
                )
                manual = len(span.candidates) - 1
            span.selected = manual
            stored = {"span": index, "text": text, "manual": True, "timestamp": time.time()}
        else:
            choice = record.get("index")
            if not isinstance(choice, int) or not 0 <= choice < len(span.candidates):
                raise SelectionError(
                    f"span {index} has {len(span.candidates)} candidates, "
                    f"index {choice!r} is out of range"
                )
            span.selected = choice
            stored = {"span": index, "index": choice, "manual": False, "timestamp": time.time()}
        state.log.append(stored)
        if persist and state.sidecar is not None:
            tmp = state.sidecar.with_suffix(state.sidecar.suffix + ".tmp")
            tmp.write_text(json.dumps(state.log, indent=1), encoding="utf-8")
            tmp.replace(state.sidecar)
        return {
            "id": index,
            "selected": span.selected,
            "candidates": [c.text for c in span.candidates],
        }

    def export(self, name: str, include_notes: bool = False) -> str:
        state = self.get(name)
        with state.lock:
            return apply_selections(state.doc, include_notes=include_notes)


class _Handler(BaseHTTPRequestHandler):
    service: TranscriptionService = None  # set by make_server
    ui_dir: Path | None = None

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, code: int, payload, content_type="application/json; charset=utf-8"):
        body = payload if isinstance(payload, bytes) else json.dumps(payload).encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _error(self, code: int, message: str):
        self._send(code, {"error": message})

    def do_GET(self):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if parts[:2] == ["api", "documents"]:
                if len(parts) == 2:
                    return self._send(200, {"documents": self.service.list_documents()})
                name = parts[2]
                if len(parts) == 3:
                    state = self.service.get(name)
                    return self._send(200, document_to_obj(state.doc))
                if len(parts) == 4 and parts[3] == "export":
                    include_notes = parse_qs(url.query).get("include_notes", ["0"])[0] in ("1", "true")
                    return self._send(200, {"text": self.service.export(name, include_notes)})
            if parts[:1] == ["api"]:
                return self._error(404, "no such endpoint")
            return self._static(url.path)
        except SelectionError as err:
            return self._error(404, str(err))

    def do_POST(self):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        if len(parts) != 4 or parts[:2] != ["api", "documents"] or parts[3] != "selections":
            return self._error(404, "no such endpoint")
        length = int(self.headers.get("Content-Length", 0))
        try:
            record = json.loads(self.rfile.read(length) or b"{}")
        except json.JSONDecodeError:
            return self._error(400, "body is not valid JSON")
        try:
            state = self.service.get(parts[2])
        except SelectionError as err:
            return self._error(404, str(err))
        try:
            result = self.service.select(parts[2], record)
        except SelectionError as err:
            return self._error(422, str(err))
        del state
        return self._send(200, result)

    def _static(self, path: str):
        if self.ui_dir is None:
            return self._error(404, "no UI directory configured")
        rel = path.lstrip("/") or "index.html"
        target = (self.ui_dir / rel).resolve()
        if not str(target).startswith(str(self.ui_dir.resolve())) or not target.is_file():
            return self._error(404, "not found")
        types = {
            ".html": "text/html; charset=utf-8",
            ".js": "text/javascript; charset=utf-8",
            ".css": "text/css; charset=utf-8",
            ".json": "application/json; charset=utf-8",
            ".svg": "image/svg+xml",
        }
        ctype = types.get(target.suffix, "application/octet-stream")
        self._send(200, target.read_bytes(), content_type=ctype)


def make_server(service: TranscriptionService, host="127.0.0.1", port=0,
                ui_dir: str | None = None) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {
        "service": service,
        "ui_dir": Path(ui_dir) if ui_dir else None,
    })
    return ThreadingHTTPServer((host, port), handler)


def run(service: TranscriptionService, host="127.0.0.1", port=8017, ui_dir=None) -> None:
    server = make_server(service, host, port, ui_dir)
    names = ", ".join(service.documents) or "none"
    print(
        f"serving {len(service.documents)} document(s) [{names}] "
        f"on http://{host}:{server.server_address[1]}/",
        flush=True,
    )
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
