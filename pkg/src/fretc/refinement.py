"""Bounded refinement checking under abstraction invariants.

A set of child requirements refines a parent when every trace (over the
declared finite domains, up to a length bound) that satisfies all children
also satisfies the parent after its abstract symbols are replaced by their
concrete definitions. Replacement realises the state-wise reading of the
abstraction invariants: the abstract boolean is a derived column, not an
independent one. The verdict is bounded evidence, never proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import parser
from .model import (
    AbstractionMapping,
    BUILTIN_FUNCTIONS,
    Binary,
    Call,
    Expr,
    FretishAst,
    Glossary,
    Neg,
    Not,
    Project,
    Timing,
    Var,
    VariableDecl,
    substitute_vars,
    walk_expr,
)
from .trace import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    Trace,
    compile_template,
    eval_expr,
    eval_template_direct,
)


class UnknownAbstractName(Exception):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"definition names {name!r}, which the parent never uses")


class MissingDomain(Exception):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"variable {name!r} has no finite domain in the glossary")


class UnknownRequirement(Exception):
    def __init__(self, req_id: str):
        self.req_id = req_id
        super().__init__(f"requirement {req_id!r} not found in the project")


@dataclass(frozen=True)
class RefinementVerdict:
    result: str  # "refines" | "counterexample" | "inconclusive"
    bound: int
    trace_count: int = 0
    trace: Optional[Trace] = None
    reason: str = ""

    def describe(self) -> str:
        if self.result == "refines":
            return (
                f"Refines: no counterexample among {self.trace_count} traces"
                f" up to bound {self.bound} over declared domains"
                " (bounded evidence, not proof)"
            )
        if self.result == "counterexample":
            return (
                f"Counterexample at bound {self.bound}: a trace satisfies every"
                " child and every definition yet violates the parent"
            )
        return f"Inconclusive: {self.reason}"


def apply_mapping(parent_ast: FretishAst, mapping: AbstractionMapping) -> FretishAst:
    """Replace every occurrence of each abstract name in the parent AST by
    its concrete expression; structure is otherwise unchanged."""
    parent_vars: set[str] = set()
    for e in _ast_exprs(parent_ast):
        parent_vars.update(n.name for n in walk_expr(e) if isinstance(n, Var))
    for d in mapping.definitions:
        if d.abstract not in parent_vars:
            raise UnknownAbstractName(d.abstract)
    subst = {d.abstract: d.concrete for d in mapping.definitions}

    def sub(e: Optional[Expr]) -> Optional[Expr]:
        return None if e is None else substitute_vars(e, subst)

    timing = parent_ast.timing
    if timing.stop is not None:
        timing = Timing("until", sub(timing.stop))
    return FretishAst(
        component=parent_ast.component,
        response=sub(parent_ast.response),
        scope_mode=parent_ast.scope_mode,
        when_cond=sub(parent_ast.when_cond),
        if_cond=sub(parent_ast.if_cond),
        timing=timing,
    )


def _ast_exprs(ast: FretishAst) -> list[Expr]:
    return [e for e in (ast.when_cond, ast.if_cond, ast.timing.stop, ast.response) if e is not None]


def _require_ast(project: Project, req_id: str) -> FretishAst:
    record = project.requirement(req_id)
    if record is None:
        raise UnknownRequirement(req_id)
    if record.ast is not None:
        return record.ast
    return parser.parse_requirement(record.fretish_text)


def _columns(asts: list[FretishAst], glossary: Glossary) -> list[VariableDecl]:
    """One enumeration column per variable / fully-applied call term used by
    the given ASTs, ordered by glossary declaration then column name."""
    found: dict[str, str] = {}  # column name -> declaring glossary name

    def visit(node: Expr) -> None:
        if isinstance(node, Var):
            found.setdefault(node.name, node.name)
        elif isinstance(node, Call):
            if node.name in BUILTIN_FUNCTIONS and len(node.args) == BUILTIN_FUNCTIONS[node.name]:
                for a in node.args:
                    visit(a)
            else:
                # Opaque observation term: one column, arguments symbolic.
                found.setdefault(parser.term_name(node), node.name)
        elif isinstance(node, (Not, Neg)):
            visit(node.arg)
        elif isinstance(node, Binary):
            visit(node.lhs)
            visit(node.rhs)

    for ast in asts:
        if ast.scope_mode is not None:
            found.setdefault(ast.scope_mode, ast.scope_mode)
        for e in _ast_exprs(ast):
            visit(e)
    order = {name: i for i, name in enumerate(glossary.names())}
    columns: list[VariableDecl] = []
    for column_name in sorted(found, key=lambda c: (order.get(found[c], len(order)), c)):
        decl = glossary.get(found[column_name])
        if decl is None or decl.domain is None or not decl.domain:
            raise MissingDomain(column_name)
        # A fully-applied call term enumerates as an ordinary signal column.
        kind = "internal" if decl.kind == "function" else decl.kind
        columns.append(
            VariableDecl(
                name=column_name,
                kind=kind,
                value_type=decl.value_type,
                enum_values=decl.enum_values,
                domain=decl.domain,
                description=decl.description,
            )
        )
    return columns


def _with_derived_columns(t: Trace, mapping: AbstractionMapping) -> Trace:
    """Append the abstract symbols as derived columns so the counterexample
    carries everything needed to re-check the definitions and the parent."""
    extra = [d for d in mapping.definitions if d.abstract not in t.variables]
    if not extra:
        return t
    names = t.variables + tuple(d.abstract for d in extra)
    states = []
    for i in range(len(t)):
        state = t.state(i)
        row = t.states[i] + tuple(eval_expr(d.concrete, state) for d in extra)
        states.append(row)
    return Trace(names, tuple(states))


def _assert_counterexample_sound(
    t: Trace,
    children: list[FretishAst],
    mapped_parent: FretishAst,
    mapping: AbstractionMapping,
) -> None:
    for child in children:
        assert eval_template_direct(child, t), "counterexample fails a child"
    for d in mapping.definitions:
        for i in range(len(t)):
            state = t.state(i)
            assert state[d.abstract] == eval_expr(d.concrete, state), (
                "counterexample breaks a definition equivalence"
            )
    assert not eval_template_direct(mapped_parent, t), "counterexample satisfies the parent"


def columns_for(asts: list[FretishAst], glossary: Glossary) -> list[VariableDecl]:
    """Public view of the per-check enumeration columns (used by the
    randomised agreement harness as well as the checker itself)."""
    return _columns(asts, glossary)


def check_refinement(
    project: Project,
    mapping: AbstractionMapping,
    bound: int,
    budget: int = DEFAULT_BUDGET,
) -> RefinementVerdict:
    """Enumerate every trace up to the length bound; report the first one
    (in enumeration order) where all children hold but the mapped parent
    fails, or bounded evidence of refinement when none exists."""
    if bound < 1:
        raise ValueError("bound must be positive")
    parent_ast = _require_ast(project, mapping.parent_id)
    children = [_require_ast(project, c) for c in mapping.child_ids]
    mapped_parent = apply_mapping(parent_ast, mapping)
    columns = _columns([mapped_parent, *children], project.glossary)

    # Compiled predicates drive the enumeration; every counterexample is then
    # re-verified through the interpretive oracle before it is reported.
    names = tuple(c.name for c in columns)
    child_checks = [compile_template(child, names) for child in children]
    parent_check = compile_template(mapped_parent, names)
    rows = list(itertools.product(*[c.domain or () for c in columns]))

    checked = 0
    for length in range(1, bound + 1):
        count = len(rows) ** length
        if count > budget:
            exc = BudgetExceeded(count, budget)
            return RefinementVerdict(
                "inconclusive",
                bound,
                checked,
                reason=(
                    f"length {length} needs {exc.count} traces,"
                    f" over the budget of {exc.budget}"
                ),
            )
        # Same lexicographic order as enumerate_traces: state index first,
        # then variable order, then domain order.
        for states in itertools.product(rows, repeat=length):
            checked += 1
            if all(check(states) for check in child_checks) and not parent_check(states):
                witness = _with_derived_columns(Trace(names, states), mapping)
                _assert_counterexample_sound(witness, children, mapped_parent, mapping)
                return RefinementVerdict("counterexample", bound, checked, trace=witness)
    return RefinementVerdict("refines", bound, checked)


def identity_mapping(req_id: str) -> AbstractionMapping:
    """Self-refinement mapping: the requirement as its own single child."""
    return AbstractionMapping(parent_id=req_id, child_ids=(req_id,))
