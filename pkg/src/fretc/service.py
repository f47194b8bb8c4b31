"""Local HTTP facade for the companion editor UI.

JSON over HTTP/1.1, loopback by default. Reads are served from an immutable
project snapshot; writes are serialised under one lock, persisted through
the project store, and guarded by optimistic per-requirement revisions
(If-Match header, 409 on a stale value).
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional

from . import parser, semantics, store, trace
from .model import Project, RequirementRecord
from .refinement import (
    MissingDomain,
    UnknownAbstractName,
    UnknownRequirement,
    check_refinement,
)
from .trace import DEFAULT_BUDGET

_REQ_PATH = re.compile(r"^/requirements/([^/]+)$")


class ProjectStore:
    """Shared state: the current project, its file, and write bookkeeping."""

    def __init__(self, path: str, project: Optional[Project] = None):
        self.path = path
        self.lock = threading.Lock()
        self.project = project if project is not None else store.load_project(path)
        self.revisions: dict[str, int] = {r.id: 1 for r in self.project.requirements}
        self._counter = 1

    def snapshot(self) -> Project:
        return self.project

    def upsert(self, req_id: str, body: dict, if_match: Optional[str]):
        with self.lock:
            current = self.revisions.get(req_id)
            if if_match is not None:
                if current is None or str(current) != if_match:
                    return None, current
            text = str(body.get("text", ""))
            try:
                ast = parser.parse_requirement(text)
            except parser.ParseError:
                ast = None
            record = RequirementRecord(
                id=req_id,
                fretish_text=text,
                parent_ids=tuple(str(p) for p in body.get("parents", [])),
                rationale=str(body.get("rationale", "")),
                comments=str(body.get("comments", "")),
                ast=ast,
            )
            requirements = list(self.project.requirements)
            for i, r in enumerate(requirements):
                if r.id == req_id:
                    requirements[i] = record
                    break
            else:
                requirements.append(record)
            self.project = replace(self.project, requirements=tuple(requirements))
            self._counter += 1
            self.revisions[req_id] = self._counter
            store.save_project(self.project, self.path)
            return record, self._counter

    def delete(self, req_id: str) -> bool:
        with self.lock:
            if self.project.requirement(req_id) is None:
                return False
            requirements = tuple(r for r in self.project.requirements if r.id != req_id)
            self.project = replace(self.project, requirements=requirements)
            self.revisions.pop(req_id, None)
            store.save_project(self.project, self.path)
            return True


def _project_doc(app: ProjectStore) -> dict:
    doc = store.project_to_json(app.snapshot())
    for req in doc["requirements"]:
        req["revision"] = app.revisions.get(req["id"], 1)
    return doc


class _Handler(BaseHTTPRequestHandler):
    app: ProjectStore  # assigned by make_server

    protocol_version = "HTTP/1.1"

    # -- plumbing -----------------------------------------------------------

    def log_message(self, format: str, *args) -> None:  # noqa: A002 - stdlib name
        pass

    def _send(self, status: int, doc: dict) -> None:
        payload = json.dumps(doc, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header(
            "Access-Control-Allow-Headers", "Content-Type, If-Match"
        )
        self.send_header("Access-Control-Allow-Methods", "GET, PUT, POST, DELETE, OPTIONS")
        self.end_headers()
        self.wfile.write(payload)

    def _body(self) -> Optional[dict]:
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length) if length else b"{}"
            doc = json.loads(raw.decode("utf-8"))
        except (ValueError, UnicodeDecodeError):
            return None
        return doc if isinstance(doc, dict) else None

    # -- routing ------------------------------------------------------------

    def do_OPTIONS(self) -> None:  # CORS preflight for the editor
        self._send(200, {})

    def do_GET(self) -> None:
        try:
            if self.path == "/project":
                self._send(200, _project_doc(self.app))
            elif self.path == "/lint":
                findings = store.lint_project(self.app.snapshot())
                self._send(200, {"findings": [
                    {
                        "severity": f.severity,
                        "code": f.code,
                        "requirement": f.requirement_id,
                        "message": f.message,
                    }
                    for f in findings
                ]})
            else:
                self._send(404, {"error": "unknown resource"})
        except Exception as exc:  # service never crashes on a request
            self._send(500, {"error": str(exc)})

    def do_PUT(self) -> None:
        try:
            m = _REQ_PATH.match(self.path)
            if not m:
                self._send(404, {"error": "unknown resource"})
                return
            body = self._body()
            if body is None or "text" not in body:
                self._send(400, {"error": "body must be JSON with a 'text' field"})
                return
            record, revision = self.app.upsert(m.group(1), body, self.headers.get("If-Match"))
            if record is None:
                self._send(409, {"error": "stale revision", "current": revision})
                return
            self._send(200, {"id": record.id, "revision": revision})
        except Exception as exc:
            self._send(500, {"error": str(exc)})

    def do_DELETE(self) -> None:
        try:
            m = _REQ_PATH.match(self.path)
            if not m:
                self._send(404, {"error": "unknown resource"})
                return
            if self.app.delete(m.group(1)):
                self._send(200, {"deleted": m.group(1)})
            else:
                self._send(404, {"error": f"unknown requirement {m.group(1)!r}"})
        except Exception as exc:
            self._send(500, {"error": str(exc)})

    def do_POST(self) -> None:
        try:
            body = self._body()
            if body is None:
                self._send(400, {"error": "body must be a JSON object"})
                return
            handler = {
                "/parse": self._post_parse,
                "/formalize": self._post_formalize,
                "/diagram": self._post_diagram,
                "/check-trace": self._post_check_trace,
                "/check-refinement": self._post_check_refinement,
            }.get(self.path)
            if handler is None:
                self._send(404, {"error": "unknown resource"})
                return
            handler(body)
        except Exception as exc:
            self._send(500, {"error": str(exc)})

    # -- endpoint bodies ------------------------------------------------------

    def _parse_or_422(self, body: dict):
        text = body.get("text")
        if not isinstance(text, str) or not text.strip():
            self._send(400, {"error": "missing 'text'"})
            return None
        try:
            return parser.parse_requirement(text)
        except parser.ParseError as exc:
            self._send(422, {"error": {
                "offset": exc.offset, "expected": exc.expected, "found": exc.found,
            }})
            return None

    def _post_parse(self, body: dict) -> None:
        ast = self._parse_or_422(body)
        if ast is not None:
            self._send(200, {"ast": parser.export_parse_tree(ast),
                             "canonical": parser.pretty_print(ast)})

    def _post_formalize(self, body: dict) -> None:
        from . import formula as fl

        ast = self._parse_or_422(body)
        if ast is None:
            return
        form = body.get("form", "ft")
        if form not in ("ft", "pt"):
            self._send(400, {"error": "form must be 'ft' or 'pt'"})
            return
        try:
            key = semantics.classify_template(ast)
            f = semantics.formalize_ft(ast) if form == "ft" else semantics.formalize_pt(ast)
        except trace.UnsupportedTemplate as exc:
            self._send(400, {"error": str(exc)})
            return
        self._send(200, {"template": key.short_form(), "formula": fl.to_text(f)})

    def _post_diagram(self, body: dict) -> None:
        ast = self._parse_or_422(body)
        if ast is None:
            return
        try:
            model = semantics.render_diagram(ast)
        except trace.UnsupportedTemplate as exc:
            self._send(400, {"error": str(exc)})
            return
        self._send(200, {
            "model": {
                "mode": model.mode_label,
                "trigger": model.trigger_label,
                "stop": model.stop_label,
                "obligation": model.obligation,
                "response": model.response_label,
            },
            "svg": semantics.diagram_svg(model),
            "ascii": semantics.diagram_ascii(model),
        })

    def _post_check_trace(self, body: dict) -> None:
        req_id = body.get("id")
        record = self.app.snapshot().requirement(str(req_id))
        if record is None:
            self._send(404, {"error": f"unknown requirement {req_id!r}"})
            return
        ast = record.ast
        if ast is None:
            self._send(422, {"error": "requirement text does not parse"})
            return
        try:
            t = trace.trace_from_json(body.get("trace") or {})
            verdict = trace.eval_template_direct(ast, t)
        except (KeyError, ValueError, TypeError) as exc:
            self._send(400, {"error": f"bad trace: {exc}"})
            return
        except (trace.UnboundSymbol, trace.TypeMismatch, trace.UnsupportedTemplate) as exc:
            self._send(400, {"error": str(exc)})
            return
        self._send(200, {"verdict": "SAT" if verdict else "UNSAT"})

    def _post_check_refinement(self, body: dict) -> None:
        try:
            mapping = store.mapping_from_json(body.get("mapping"), "/mapping")
        except store.SchemaViolation as exc:
            self._send(400, {"error": str(exc)})
            return
        bound = body.get("bound")
        if not isinstance(bound, int) or bound < 1:
            self._send(400, {"error": "bound must be a positive integer"})
            return
        try:
            verdict = check_refinement(
                self.app.snapshot(), mapping, bound=bound, budget=DEFAULT_BUDGET
            )
        except UnknownRequirement as exc:
            self._send(404, {"error": str(exc)})
            return
        except (UnknownAbstractName, MissingDomain, trace.UnsupportedTemplate) as exc:
            self._send(400, {"error": str(exc)})
            return
        doc: dict = {
            "verdict": verdict.result,
            "bound": verdict.bound,
            "traces": verdict.trace_count,
            "note": verdict.describe(),
        }
        if verdict.trace is not None:
            doc["trace"] = trace.trace_to_json(verdict.trace)
        if verdict.reason:
            doc["reason"] = verdict.reason
        self._send(200, doc)


def make_server(project_path: str, port: int = 0, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Build (but do not start) the HTTP server; port 0 picks a free port."""
    app = ProjectStore(project_path)
    handler = type("BoundHandler", (_Handler,), {"app": app})
    return ThreadingHTTPServer((host, port), handler)


def run_service(project_path: str, port: int = 8155) -> None:
    server = make_server(project_path, port=port)
    host, actual_port = server.server_address[:2]
    print(f"serving {project_path} on http://{host}:{actual_port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
