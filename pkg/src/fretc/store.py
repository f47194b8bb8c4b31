"""Project persistence, glossary lint, and rename refactoring.

The requirement text is the source of truth; ASTs are a cache rebuilt on
load and invalidated by edits. Saving is byte-deterministic so that
save(load(file)) is a fixpoint on canonical files.
"""

from __future__ import annotations

import json
import os
from dataclasses import replace
from typing import Optional

import re as _re

from . import parser
from .model import (
    AbstractionMapping,
    Add,
    BUILTIN_FUNCTIONS,
    Binary,
    BoolLit,
    Call,
    Definition,
    Eq,
    Expr,
    FretishAst,
    Ge,
    Glossary,
    Gt,
    Le,
    LintFinding,
    Lt,
    Ne,
    Neg,
    Not,
    NullLit,
    NumLit,
    Project,
    RequirementRecord,
    ScenarioRecord,
    Sub,
    Timing,
    Var,
    VariableDecl,
    validate_project,
)
from .trace import Trace, value_from_json, value_to_json


class SchemaViolation(Exception):
    def __init__(self, pointer: str, reason: str):
        self.pointer = pointer
        self.reason = reason
        super().__init__(f"{pointer}: {reason}")


class IoFailure(Exception):
    pass


class NameCollision(Exception):
    pass


class UnknownName(Exception):
    pass


# ---------------------------------------------------------------------------
# Schema helpers


def _expect(cond: bool, pointer: str, reason: str) -> None:
    if not cond:
        raise SchemaViolation(pointer, reason)


def _get_str(obj: dict, key: str, pointer: str) -> str:
    _expect(key in obj, pointer, f"missing field {key!r}")
    value = obj[key]
    _expect(isinstance(value, str), f"{pointer}/{key}", "expected a string")
    return value


def _get_list(obj: dict, key: str, pointer: str) -> list:
    _expect(key in obj, pointer, f"missing field {key!r}")
    value = obj[key]
    _expect(isinstance(value, list), f"{pointer}/{key}", "expected an array")
    return value


# ---------------------------------------------------------------------------
# Load


def _decl_from_json(obj: object, pointer: str) -> VariableDecl:
    _expect(isinstance(obj, dict), pointer, "expected an object")
    assert isinstance(obj, dict)
    name = _get_str(obj, "name", pointer)
    kind = _get_str(obj, "kind", pointer)
    vt = obj.get("value_type")
    enum_values: tuple[str, ...] = ()
    if isinstance(vt, dict) and set(vt) == {"enum"}:
        value_type = "enum"
        enum_values = tuple(str(s) for s in vt["enum"])
    elif isinstance(vt, str):
        value_type = vt
    else:
        raise SchemaViolation(f"{pointer}/value_type", f"bad value type {vt!r}")
    arity = obj.get("arity", 0)
    _expect(isinstance(arity, int) and arity >= 0, f"{pointer}/arity", "expected a non-negative integer")
    domain = None
    if obj.get("domain") is not None:
        raw = obj["domain"]
        _expect(isinstance(raw, list), f"{pointer}/domain", "expected an array or null")
        domain = tuple(value_from_json(v, f"domain[{i}]") for i, v in enumerate(raw))
    try:
        return VariableDecl(
            name=name,
            kind=kind,
            value_type=value_type,
            arity=arity,
            enum_values=enum_values,
            domain=domain,
            description=str(obj.get("description", "")),
        )
    except ValueError as exc:
        raise SchemaViolation(pointer, str(exc)) from exc


def _requirement_from_json(obj: object, pointer: str) -> RequirementRecord:
    _expect(isinstance(obj, dict), pointer, "expected an object")
    assert isinstance(obj, dict)
    req_id = _get_str(obj, "id", pointer)
    parents = _get_list(obj, "parents", pointer)
    for i, p in enumerate(parents):
        _expect(isinstance(p, str), f"{pointer}/parents/{i}", "expected a string")
    text = _get_str(obj, "text", pointer)
    record = RequirementRecord(
        id=req_id,
        fretish_text=text,
        parent_ids=tuple(parents),
        rationale=str(obj.get("rationale", "")),
        comments=str(obj.get("comments", "")),
    )
    try:
        return record.with_ast(parser.parse_requirement(text))
    except parser.ParseError:
        # Unparseable text stays loadable; lint and the editor surface it.
        return record


def _mapping_from_json(obj: object, pointer: str) -> AbstractionMapping:
    _expect(isinstance(obj, dict), pointer, "expected an object")
    assert isinstance(obj, dict)
    parent = _get_str(obj, "parent", pointer)
    children = _get_list(obj, "children", pointer)
    definitions = []
    for i, d in enumerate(_get_list(obj, "definitions", pointer)):
        dp = f"{pointer}/definitions/{i}"
        _expect(isinstance(d, dict), dp, "expected an object")
        abstract = _get_str(d, "abstract", dp)
        concrete_text = _get_str(d, "concrete", dp)
        try:
            concrete = parser.parse_expr(concrete_text)
        except parser.ParseError as exc:
            raise SchemaViolation(f"{dp}/concrete", str(exc)) from exc
        definitions.append(Definition(abstract, concrete, concrete_text))
    try:
        return AbstractionMapping(
            parent_id=parent,
            child_ids=tuple(str(c) for c in children),
            definitions=tuple(definitions),
            superposition_note=str(obj.get("note", "")),
        )
    except ValueError as exc:
        raise SchemaViolation(pointer, str(exc)) from exc


def _scenario_from_json(obj: object, pointer: str) -> ScenarioRecord:
    _expect(isinstance(obj, dict), pointer, "expected an object")
    assert isinstance(obj, dict)
    return ScenarioRecord(
        id=_get_str(obj, "id", pointer),
        requirement_id=_get_str(obj, "requirement", pointer),
        preconditions=str(obj.get("preconditions", "")),
        input_steps=str(obj.get("input_steps", "")),
        expected_results=str(obj.get("expected_results", "")),
    )


def project_from_json(doc: object) -> Project:
    _expect(isinstance(doc, dict), "/", "expected a JSON object")
    assert isinstance(doc, dict)
    name = _get_str(doc, "name", "/")
    glossary = Glossary(
        tuple(
            _decl_from_json(g, f"/glossary/{i}")
            for i, g in enumerate(_get_list(doc, "glossary", "/"))
        )
    )
    requirements = tuple(
        _requirement_from_json(r, f"/requirements/{i}")
        for i, r in enumerate(_get_list(doc, "requirements", "/"))
    )
    seen: set[str] = set()
    for i, r in enumerate(requirements):
        if r.id in seen:
            raise SchemaViolation(f"/requirements/{i}/id", f"duplicate requirement id {r.id!r}")
        seen.add(r.id)
    mappings = tuple(
        _mapping_from_json(m, f"/mappings/{i}")
        for i, m in enumerate(doc.get("mappings", []) or [])
    )
    scenarios = tuple(
        _scenario_from_json(s, f"/scenarios/{i}")
        for i, s in enumerate(doc.get("scenarios", []) or [])
    )
    return Project(
        name=name,
        requirements=requirements,
        glossary=glossary,
        mappings=mappings,
        scenarios=scenarios,
    )


def load_project(path: str | os.PathLike) -> Project:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("/", f"not valid JSON: {exc}") from exc
    return project_from_json(doc)


def mapping_from_json(doc: object, pointer: str = "/") -> AbstractionMapping:
    return _mapping_from_json(doc, pointer)


def load_mapping(path: str | os.PathLike) -> AbstractionMapping:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("/", f"not valid JSON: {exc}") from exc
    return _mapping_from_json(doc, "/")


# ---------------------------------------------------------------------------
# Save


def _decl_to_json(d: VariableDecl) -> dict:
    value_type: object = d.value_type
    if d.value_type == "enum":
        value_type = {"enum": list(d.enum_values)}
    return {
        "name": d.name,
        "kind": d.kind,
        "value_type": value_type,
        "arity": d.arity,
        "domain": None if d.domain is None else [value_to_json(v) for v in d.domain],
        "description": d.description,
    }


def _requirement_to_json(r: RequirementRecord) -> dict:
    return {
        "id": r.id,
        "parents": list(r.parent_ids),
        "text": r.fretish_text,
        "rationale": r.rationale,
        "comments": r.comments,
    }


def _mapping_to_json(m: AbstractionMapping) -> dict:
    return {
        "parent": m.parent_id,
        "children": list(m.child_ids),
        "definitions": [
            {"abstract": d.abstract, "concrete": d.concrete_text or parser.print_expr(d.concrete)}
            for d in m.definitions
        ],
        "note": m.superposition_note,
    }


def _scenario_to_json(s: ScenarioRecord) -> dict:
    return {
        "id": s.id,
        "requirement": s.requirement_id,
        "preconditions": s.preconditions,
        "input_steps": s.input_steps,
        "expected_results": s.expected_results,
    }


def project_to_json(project: Project) -> dict:
    return {
        "name": project.name,
        "glossary": [_decl_to_json(d) for d in project.glossary.entries],
        "requirements": [_requirement_to_json(r) for r in project.requirements],
        "mappings": [_mapping_to_json(m) for m in project.mappings],
        "scenarios": [_scenario_to_json(s) for s in project.scenarios],
    }


def dumps_project(project: Project) -> str:
    return json.dumps(project_to_json(project), indent=2, ensure_ascii=False) + "\n"


def save_project(project: Project, path: str | os.PathLike) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps_project(project))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Lint

_NUMERIC = "numeric"
_BOOLEAN = "boolean"
_ENUM = "enum"
_NULL = "null"

_DECL_TYPE = {"boolean": _BOOLEAN, "integer": _NUMERIC, "real": _NUMERIC, "enum": _ENUM}


class _Linter:
    def __init__(self, project: Project):
        self.project = project
        self.glossary = project.glossary
        self.findings: list[LintFinding] = []
        self.req_id: Optional[str] = None
        self._reported: set[tuple[Optional[str], str, str]] = set()

    def report(self, severity: str, code: str, message: str) -> None:
        key = (self.req_id, code, message)
        if key in self._reported:
            return
        self._reported.add(key)
        self.findings.append(LintFinding(severity, code, message, self.req_id))

    def undeclared(self, name: str) -> None:
        self.report("warning", "undeclared-variable", f"{name!r} is not in the glossary")

    def infer(self, e: Expr) -> Optional[str]:
        if isinstance(e, BoolLit):
            return _BOOLEAN
        if isinstance(e, NullLit):
            return _NULL
        if isinstance(e, NumLit):
            return _NUMERIC
        if isinstance(e, Var):
            decl = self.glossary.get(e.name)
            if decl is None:
                self.undeclared(e.name)
                return None
            return _DECL_TYPE[decl.value_type]
        if isinstance(e, Call):
            arg_types = [self.infer(a) for a in e.args]
            if e.name in BUILTIN_FUNCTIONS:
                if len(e.args) != BUILTIN_FUNCTIONS[e.name]:
                    self.report(
                        "error", "type-mismatch",
                        f"{e.name} takes {BUILTIN_FUNCTIONS[e.name]} argument(s)",
                    )
                for a, at in zip(e.args, arg_types):
                    if at in (_BOOLEAN, _ENUM):
                        self.report(
                            "error", "type-mismatch",
                            f"{e.name} applied to non-numeric {parser.print_expr(a)}",
                        )
                return _NUMERIC
            decl = self.glossary.get(e.name)
            if decl is None:
                self.undeclared(e.name)
                return None
            if decl.kind != "function":
                self.report(
                    "error", "type-mismatch",
                    f"{e.name!r} is declared as a {decl.kind}, not a function",
                )
            elif decl.arity != len(e.args):
                self.report(
                    "error", "type-mismatch",
                    f"{e.name!r} is declared with arity {decl.arity}, applied to {len(e.args)}",
                )
            return _DECL_TYPE[decl.value_type]
        if isinstance(e, Not):
            self._expect_boolean(e.arg)
            return _BOOLEAN
        if isinstance(e, Neg):
            self._expect_numeric(e.arg)
            return _NUMERIC
        assert isinstance(e, Binary)
        if isinstance(e, (Add, Sub)):
            self._expect_numeric(e.lhs)
            self._expect_numeric(e.rhs)
            return _NUMERIC
        if isinstance(e, (Eq, Ne)):
            lt = self.infer(e.lhs)
            rt = self.infer(e.rhs)
            if lt and rt and _NULL not in (lt, rt) and lt != rt:
                self.report(
                    "error", "type-mismatch",
                    f"comparing {lt} with {rt} in {parser.print_expr(e)}",
                )
            return _BOOLEAN
        if isinstance(e, (Lt, Le, Gt, Ge)):
            self._expect_numeric(e.lhs)
            self._expect_numeric(e.rhs)
            return _BOOLEAN
        # And / Or / Implies
        self._expect_boolean(e.lhs)
        self._expect_boolean(e.rhs)
        return _BOOLEAN

    def _expect_boolean(self, e: Expr) -> None:
        t = self.infer(e)
        if t in (_NUMERIC, _ENUM, _NULL):
            self.report(
                "error", "type-mismatch",
                f"boolean operator applied to {t} operand {parser.print_expr(e)}",
            )

    def _expect_numeric(self, e: Expr) -> None:
        t = self.infer(e)
        if t in (_BOOLEAN, _ENUM):
            self.report(
                "error", "type-mismatch",
                f"numeric operator applied to {t} operand {parser.print_expr(e)}",
            )

    def lint_requirement(self, record: RequirementRecord) -> None:
        self.req_id = record.id
        ast = record.ast
        if ast is None:
            return
        if ast.scope_mode is not None:
            decl = self.glossary.get(ast.scope_mode)
            if decl is None or decl.kind != "mode":
                self.report(
                    "error", "undeclared-mode",
                    f"scope {ast.scope_mode!r} is not declared as a mode",
                )
        for e in (ast.when_cond, ast.if_cond, ast.timing.stop, ast.response):
            if e is not None:
                self._expect_boolean(e)

    def lint_mapping(self, mapping: AbstractionMapping) -> None:
        self.req_id = mapping.parent_id
        parent = self.project.requirement(mapping.parent_id)
        if parent is None or parent.ast is None:
            return
        child_symbols: set[str] = set()
        for child_id in mapping.child_ids:
            child = self.project.requirement(child_id)
            if child is not None and child.ast is not None:
                for e in _ast_exprs(child.ast):
                    child_symbols.update(_expr_var_names(e))
        defined = {d.abstract for d in mapping.definitions}
        for name in sorted(_parent_var_names(parent.ast)):
            if name not in defined and name not in child_symbols:
                self.report(
                    "warning", "unmapped-abstract-symbol",
                    f"{name!r} has no definition and never appears in the children",
                )


def _ast_exprs(ast: FretishAst) -> list[Expr]:
    return [e for e in (ast.when_cond, ast.if_cond, ast.timing.stop, ast.response) if e is not None]


def _expr_var_names(e: Expr) -> set[str]:
    names: set[str] = set()

    def visit(node: Expr) -> None:
        if isinstance(node, Var):
            names.add(node.name)
        elif isinstance(node, Call):
            for a in node.args:
                visit(a)
        elif isinstance(node, (Not, Neg)):
            visit(node.arg)
        elif isinstance(node, Binary):
            visit(node.lhs)
            visit(node.rhs)

    visit(e)
    return names


def _parent_var_names(ast: FretishAst) -> set[str]:
    names: set[str] = set()
    for e in _ast_exprs(ast):
        names |= _expr_var_names(e)
    return names


def lint_project(project: Project) -> list[LintFinding]:
    """Structural violations plus glossary findings: undeclared symbols
    (warnings), type misuse and undeclared modes (errors), and mapping
    definitions left abstract (warnings). Never mutates the project."""
    linter = _Linter(project)
    linter.findings.extend(validate_project(project))
    for record in project.requirements:
        linter.lint_requirement(record)
    for mapping in project.mappings:
        linter.lint_mapping(mapping)
    return linter.findings


def lint_errors(findings: list[LintFinding]) -> list[LintFinding]:
    return [f for f in findings if f.severity == "error"]


def lint_trace(project: Project, t: Trace) -> list[LintFinding]:
    """Trace-level findings: the evaluator permits two modes to hold at the
    same step, but that usually signals a modelling slip."""
    modes = [d.name for d in project.glossary.entries if d.kind == "mode"]
    findings: list[LintFinding] = []
    bound = [m for m in modes if m in t.variables]
    for i in range(len(t)):
        state = t.state(i)
        active = [m for m in bound if state[m] is True]
        if len(active) > 1:
            findings.append(
                LintFinding(
                    "warning",
                    "overlapping-modes",
                    f"modes {', '.join(active)} all hold at step {i}",
                )
            )
    return findings


# ---------------------------------------------------------------------------
# Rename refactoring


def _rename_expr(e: Expr, old: str, new: str) -> Expr:
    if isinstance(e, Var):
        return Var(new) if e.name == old else e
    if isinstance(e, Call):
        name = new if e.name == old else e.name
        return Call(name, tuple(_rename_expr(a, old, new) for a in e.args))
    if isinstance(e, (Not, Neg)):
        return type(e)(_rename_expr(e.arg, old, new))
    if isinstance(e, Binary):
        return type(e)(_rename_expr(e.lhs, old, new), _rename_expr(e.rhs, old, new))
    return e


def _rename_ast(ast: FretishAst, old: str, new: str) -> FretishAst:
    timing = ast.timing
    if timing.stop is not None:
        timing = Timing("until", _rename_expr(timing.stop, old, new))
    return FretishAst(
        component=new if ast.component == old else ast.component,
        response=_rename_expr(ast.response, old, new),
        scope_mode=new if ast.scope_mode == old else ast.scope_mode,
        when_cond=_rename_expr(ast.when_cond, old, new) if ast.when_cond is not None else None,
        if_cond=_rename_expr(ast.if_cond, old, new) if ast.if_cond is not None else None,
        timing=timing,
    )


def _ast_symbols(ast: FretishAst) -> set[str]:
    names: set[str] = {ast.component}
    if ast.scope_mode is not None:
        names.add(ast.scope_mode)
    for e in _ast_exprs(ast):
        names |= _expr_var_names(e)
        for node in _walk(e):
            if isinstance(node, Call):
                names.add(node.name)
    return names


def _walk(e: Expr):
    yield e
    if isinstance(e, (Not, Neg)):
        yield from _walk(e.arg)
    elif isinstance(e, Binary):
        yield from _walk(e.lhs)
        yield from _walk(e.rhs)
    elif isinstance(e, Call):
        for a in e.args:
            yield from _walk(a)


def _project_symbols(project: Project) -> set[str]:
    names: set[str] = set(project.glossary.names())
    for r in project.requirements:
        if r.ast is not None:
            names |= _ast_symbols(r.ast)
    for m in project.mappings:
        for d in m.definitions:
            names.add(d.abstract)
            names |= _expr_var_names(d.concrete)
            for node in _walk(d.concrete):
                if isinstance(node, Call):
                    names.add(node.name)
    return names


def rename_variable(project: Project, old: str, new: str) -> Project:
    """Rename a symbol across requirement ASTs, the glossary and mapping
    definitions; texts of affected requirements are regenerated via the
    canonical printer, everything else is untouched."""
    if not _re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", new) or new in parser.KEYWORDS:
        raise ValueError(f"{new!r} is not a legal identifier")
    symbols = _project_symbols(project)
    if old not in symbols:
        raise UnknownName(f"{old!r} is neither declared nor used")
    if new in symbols:
        raise NameCollision(f"{new!r} is already declared or used")

    requirements = []
    for r in project.requirements:
        if r.ast is not None and old in _ast_symbols(r.ast):
            ast = _rename_ast(r.ast, old, new)
            requirements.append(replace(r, fretish_text=parser.pretty_print(ast), ast=ast))
        else:
            requirements.append(r)

    entries = tuple(
        replace(d, name=new) if d.name == old else d for d in project.glossary.entries
    )

    mappings = []
    for m in project.mappings:
        definitions = []
        changed = False
        for d in m.definitions:
            abstract = new if d.abstract == old else d.abstract
            concrete = _rename_expr(d.concrete, old, new)
            if abstract != d.abstract or concrete != d.concrete:
                changed = True
                definitions.append(Definition(abstract, concrete, parser.print_expr(concrete)))
            else:
                definitions.append(d)
        mappings.append(replace(m, definitions=tuple(definitions)) if changed else m)

    return Project(
        name=project.name,
        requirements=tuple(requirements),
        glossary=Glossary(entries),
        mappings=tuple(mappings),
        scenarios=project.scenarios,
    )
