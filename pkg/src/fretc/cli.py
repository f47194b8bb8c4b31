"""Command-line interface exposing every pipeline stage.

Exit codes: 0 success/SAT/Refines; 1 UNSAT/Counterexample/lint errors;
2 usage error; 3 parse/schema error; 4 enumeration budget exceeded.
Diagnostics go to stderr; stdout carries only the command's result and is
byte-deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import parser, semantics, store, trace
from .corpus import builtin_corpus
from .refinement import (
    MissingDomain,
    UnknownAbstractName,
    UnknownRequirement,
    check_refinement,
)
from .trace import DEFAULT_BUDGET

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_project(path: str):
    return store.load_project(path)


def _find_requirement(project, req_id: str):
    record = project.requirement(req_id)
    if record is None:
        raise UnknownRequirement(req_id)
    if record.ast is None:
        record = record.with_ast(parser.parse_requirement(record.fretish_text))
    return record


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("FRETC_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(_fail(f"FRETC_BUDGET must be an integer, got {env!r}", EXIT_USAGE))
    return DEFAULT_BUDGET


def _json_out(doc) -> None:
    print(json.dumps(doc, indent=2, ensure_ascii=False))


# ---------------------------------------------------------------------------
# Subcommands


def cmd_parse(args) -> int:
    text = _read_source(args.source)
    ast = parser.parse_requirement(text)
    if args.tree:
        _json_out(parser.export_parse_tree(ast))
    else:
        print(parser.pretty_print(ast))
    return EXIT_OK


def cmd_classify(args) -> int:
    record = _find_requirement(_load_project(args.project), args.id)
    print(semantics.classify_template(record.ast).short_form())
    return EXIT_OK


def cmd_formalize(args) -> int:
    record = _find_requirement(_load_project(args.project), args.id)
    f = semantics.formalize_pt(record.ast) if args.pt else semantics.formalize_ft(record.ast)
    from . import formula as fl

    print(fl.to_text(f))
    return EXIT_OK


def cmd_diagram(args) -> int:
    record = _find_requirement(_load_project(args.project), args.id)
    model = semantics.render_diagram(record.ast)
    if args.svg:
        sys.stdout.write(semantics.diagram_svg(model))
    else:
        sys.stdout.write(semantics.diagram_ascii(model))
    return EXIT_OK


def cmd_lint(args) -> int:
    findings = store.lint_project(_load_project(args.project))
    for f in findings:
        where = f.requirement_id or "-"
        print(f"{f.severity}: {f.code}: {where}: {f.message}")
    print(f"{len(store.lint_errors(findings))} error(s), "
          f"{sum(1 for f in findings if f.severity == 'warning')} warning(s)")
    return EXIT_VIOLATED if store.lint_errors(findings) else EXIT_OK


def cmd_check_trace(args) -> int:
    project = _load_project(args.project)
    record = _find_requirement(project, args.id)
    t = trace.load_trace(args.trace)
    for finding in store.lint_trace(project, t):
        print(f"{finding.severity}: {finding.code}: {finding.message}", file=sys.stderr)
    verdict = trace.eval_template_direct(record.ast, t)
    print("SAT" if verdict else "UNSAT")
    return EXIT_OK if verdict else EXIT_VIOLATED


def cmd_check_refinement(args) -> int:
    project = _load_project(args.project)
    mapping = store.load_mapping(args.mapping)
    verdict = check_refinement(project, mapping, bound=args.bound, budget=_budget(args))
    doc: dict = {"verdict": verdict.result, "bound": verdict.bound}
    if verdict.result == "refines":
        doc["traces"] = verdict.trace_count
    if verdict.trace is not None:
        doc["trace"] = trace.trace_to_json(verdict.trace)
    if verdict.reason:
        doc["reason"] = verdict.reason
    doc["note"] = verdict.describe()
    _json_out(doc)
    if verdict.result == "refines":
        return EXIT_OK
    if verdict.result == "counterexample":
        return EXIT_VIOLATED
    return EXIT_BUDGET


def cmd_rename(args) -> int:
    project = _load_project(args.project)
    renamed = store.rename_variable(project, args.old, args.new)
    if args.in_place:
        store.save_project(renamed, args.project)
    else:
        sys.stdout.write(store.dumps_project(renamed))
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.action != "init":
        return _fail(f"unknown corpus action {args.action!r}", EXIT_USAGE)
    os.makedirs(args.dir, exist_ok=True)
    path = os.path.join(args.dir, "corpus.json")
    store.save_project(builtin_corpus(), path)
    print(path)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import run_service

    run_service(args.project, port=args.port)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument wiring


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="fretc", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse FRETISH text from a file or '-'")
    p.add_argument("source")
    p.add_argument("--tree", action="store_true", help="emit the JSON parse tree")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("classify", help="print a requirement's template key")
    p.add_argument("project")
    p.add_argument("id")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("formalize", help="print the temporal formula (prefix form)")
    p.add_argument("project")
    p.add_argument("id")
    direction = p.add_mutually_exclusive_group(required=True)
    direction.add_argument("--ft", action="store_true", help="future-time formula")
    direction.add_argument("--pt", action="store_true", help="past-time formula")
    p.set_defaults(func=cmd_formalize)

    p = sub.add_parser("diagram", help="render the timeline diagram")
    p.add_argument("project")
    p.add_argument("id")
    form = p.add_mutually_exclusive_group()
    form.add_argument("--ascii", action="store_true", help="plain-text timeline (default)")
    form.add_argument("--svg", action="store_true", help="SVG timeline")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("lint", help="check the project against its glossary")
    p.add_argument("project")
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("check-trace", help="evaluate a requirement over a trace file")
    p.add_argument("project")
    p.add_argument("id")
    p.add_argument("trace")
    p.set_defaults(func=cmd_check_trace)

    p = sub.add_parser("check-refinement", help="bounded parent/child refinement check")
    p.add_argument("project")
    p.add_argument("mapping")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--budget", type=int, default=None,
                   help=f"trace budget (default {DEFAULT_BUDGET}, env FRETC_BUDGET)")
    p.set_defaults(func=cmd_check_refinement)

    p = sub.add_parser("rename", help="rename a variable across the project")
    p.add_argument("project")
    p.add_argument("old")
    p.add_argument("new")
    p.add_argument("--in-place", action="store_true")
    p.set_defaults(func=cmd_rename)

    p = sub.add_parser("corpus", help="built-in corpus commands")
    p.add_argument("action", choices=["init"])
    p.add_argument("dir")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("serve", help="serve the HTTP API for a project file")
    p.add_argument("project")
    p.add_argument("--port", type=int, default=8155)
    p.set_defaults(func=cmd_serve)

    return top


def main(argv: Optional[list[str]] = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.func(args)
    except parser.ParseError as exc:
        return _fail(str(exc), EXIT_PARSE)
    except store.SchemaViolation as exc:
        return _fail(str(exc), EXIT_PARSE)
    except store.IoFailure as exc:
        return _fail(str(exc), EXIT_PARSE)
    except (trace.UnboundSymbol, trace.TypeMismatch) as exc:
        return _fail(str(exc), EXIT_PARSE)
    except trace.UnsupportedTemplate as exc:
        return _fail(str(exc), EXIT_USAGE)
    except trace.BudgetExceeded as exc:
        return _fail(str(exc), EXIT_BUDGET)
    except (UnknownRequirement, UnknownAbstractName, MissingDomain) as exc:
        return _fail(str(exc), EXIT_USAGE)
    except (store.NameCollision, store.UnknownName) as exc:
        return _fail(str(exc), EXIT_USAGE)
    except OSError as exc:
        return _fail(str(exc), EXIT_PARSE)


if __name__ == "__main__":
    sys.exit(main())
