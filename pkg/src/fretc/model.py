"""Core domain types shared by every other module.

Requirements, expression trees, the glossary, and projects. All values are
immutable after construction; mutation happens by building new values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Optional, Union

# Trace/domain values: booleans, exact decimals, enum symbols, or null (None).
Value = Union[bool, Fraction, str, None]

REQUIREMENT_ID_RE = re.compile(r"^[A-Za-z][A-Za-z0-9]*_R_[0-9]+(\.[0-9]+)?$")

# Function names evaluated by the toolkit itself; every other call term is an
# opaque observation column named by its printed form.
BUILTIN_FUNCTIONS = {"diff": 2, "abs": 1}


# ---------------------------------------------------------------------------
# Expressions


@dataclass(frozen=True)
class Expr:
    """Base class for condition/response expression nodes."""


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool


@dataclass(frozen=True)
class NullLit(Expr):
    pass


@dataclass(frozen=True)
class NumLit(Expr):
    """Exact decimal literal; the source text is preserved verbatim."""

    text: str

    def as_fraction(self) -> Fraction:
        return Fraction(self.text)


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class Not(Expr):
    arg: Expr


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Binary(Expr):
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class And(Binary):
    pass


@dataclass(frozen=True)
class Or(Binary):
    pass


@dataclass(frozen=True)
class Implies(Binary):
    pass


@dataclass(frozen=True)
class Add(Binary):
    pass


@dataclass(frozen=True)
class Sub(Binary):
    pass


@dataclass(frozen=True)
class Lt(Binary):
    pass


@dataclass(frozen=True)
class Le(Binary):
    pass


@dataclass(frozen=True)
class Gt(Binary):
    pass


@dataclass(frozen=True)
class Ge(Binary):
    pass


@dataclass(frozen=True)
class Eq(Binary):
    pass


@dataclass(frozen=True)
class Ne(Binary):
    pass


def walk_expr(e: Expr) -> Iterator[Expr]:
    """Yield e and every descendant node, depth-first."""
    yield e
    if isinstance(e, (Not, Neg)):
        yield from walk_expr(e.arg)
    elif isinstance(e, Binary):
        yield from walk_expr(e.lhs)
        yield from walk_expr(e.rhs)
    elif isinstance(e, Call):
        for a in e.args:
            yield from walk_expr(a)


def substitute_vars(e: Expr, mapping: dict[str, Expr]) -> Expr:
    """Replace every Var whose name is in mapping; other nodes are rebuilt."""
    if isinstance(e, Var):
        return mapping.get(e.name, e)
    if isinstance(e, (Not, Neg)):
        return type(e)(substitute_vars(e.arg, mapping))
    if isinstance(e, Binary):
        return type(e)(substitute_vars(e.lhs, mapping), substitute_vars(e.rhs, mapping))
    if isinstance(e, Call):
        return Call(e.name, tuple(substitute_vars(a, mapping) for a in e.args))
    return e


# ---------------------------------------------------------------------------
# Requirements


@dataclass(frozen=True)
class Timing:
    """Timing field of a requirement: eventually (the default), always, or
    until a stopping condition."""

    kind: str  # "eventually" | "always" | "until"
    stop: Optional[Expr] = None

    def __post_init__(self) -> None:
        if self.kind not in ("eventually", "always", "until"):
            raise ValueError(f"unknown timing kind {self.kind!r}")
        if (self.kind == "until") != (self.stop is not None):
            raise ValueError("timing carries a stop expression iff kind is 'until'")


EVENTUALLY = Timing("eventually")
ALWAYS = Timing("always")


def until(stop: Expr) -> Timing:
    return Timing("until", stop)


@dataclass(frozen=True)
class FretishAst:
    """Parsed requirement: optional scope mode, optional when/if conditions,
    component, timing, and the response expression."""

    component: str
    response: Expr
    scope_mode: Optional[str] = None
    when_cond: Optional[Expr] = None
    if_cond: Optional[Expr] = None
    timing: Timing = EVENTUALLY

    def condition(self) -> Optional[Expr]:
        """Effective trigger condition: the conjunction of when and if."""
        if self.when_cond is not None and self.if_cond is not None:
            return And(self.when_cond, self.if_cond)
        return self.when_cond if self.when_cond is not None else self.if_cond


@dataclass(frozen=True)
class RequirementRecord:
    """A requirement's identity, FRETISH text, parent links and notes.

    Records never copy symbol definitions from their parents; each
    requirement is self-contained.
    """

    id: str
    fretish_text: str
    parent_ids: tuple[str, ...] = ()
    rationale: str = ""
    comments: str = ""
    ast: Optional[FretishAst] = None

    def with_ast(self, ast: FretishAst) -> "RequirementRecord":
        return replace(self, ast=ast)


# ---------------------------------------------------------------------------
# Glossary


VARIABLE_KINDS = ("input", "output", "internal", "mode", "function", "constant")
VALUE_TYPES = ("boolean", "integer", "real", "enum")


@dataclass(frozen=True)
class VariableDecl:
    """Globally declared variable with optional finite domain for bounded
    checking. Function-kind entries describe call terms; their domain applies
    to each fully-applied term column."""

    name: str
    kind: str
    value_type: str
    arity: int = 0
    enum_values: tuple[str, ...] = ()
    domain: Optional[tuple[Value, ...]] = None
    description: str = ""

    def __post_init__(self) -> None:
        if self.kind not in VARIABLE_KINDS:
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if self.value_type not in VALUE_TYPES:
            raise ValueError(f"unknown value type {self.value_type!r}")
        if self.kind == "mode" and (self.value_type != "boolean" or self.arity != 0):
            raise ValueError(f"mode {self.name!r} must be a boolean with arity 0")
        if self.kind == "function" and self.arity < 1:
            raise ValueError(f"function {self.name!r} needs arity >= 1")
        if self.value_type == "enum" and not self.enum_values:
            raise ValueError(f"enum {self.name!r} needs at least one symbol")
        if self.domain is not None:
            for v in self.domain:
                if not self._value_fits(v):
                    raise ValueError(f"domain value {v!r} outside type of {self.name!r}")

    def _value_fits(self, v: Value) -> bool:
        # null is out-of-band and may appear in any domain.
        if v is None:
            return True
        if self.value_type == "boolean":
            return isinstance(v, bool)
        if self.value_type in ("integer", "real"):
            return isinstance(v, Fraction) and not isinstance(v, bool)
        return isinstance(v, str) and v in self.enum_values


@dataclass(frozen=True)
class Glossary:
    """Name-unique map of variable declarations; lookups of undeclared names
    are lint findings, never hard failures."""

    entries: tuple[VariableDecl, ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for d in self.entries:
            if d.name in seen:
                raise ValueError(f"duplicate glossary entry {d.name!r}")
            seen.add(d.name)

    def get(self, name: str) -> Optional[VariableDecl]:
        for d in self.entries:
            if d.name == name:
                return d
        return None

    def __contains__(self, name: str) -> bool:
        return self.get(name) is not None

    def names(self) -> list[str]:
        return [d.name for d in self.entries]


# ---------------------------------------------------------------------------
# Mappings, scenarios, projects


@dataclass(frozen=True)
class Definition:
    """Data-refinement equivalence: an abstract parent symbol and the
    concrete expression it stands for."""

    abstract: str
    concrete: Expr
    concrete_text: str = ""


@dataclass(frozen=True)
class AbstractionMapping:
    parent_id: str
    child_ids: tuple[str, ...]
    definitions: tuple[Definition, ...] = ()
    superposition_note: str = ""

    def __post_init__(self) -> None:
        if not self.child_ids:
            raise ValueError("mapping needs at least one child requirement")
        names = [d.abstract for d in self.definitions]
        if len(names) != len(set(names)):
            raise ValueError("abstract names must be unique within a mapping")


@dataclass(frozen=True)
class ScenarioRecord:
    id: str
    requirement_id: str
    preconditions: str
    input_steps: str
    expected_results: str


@dataclass(frozen=True)
class LintFinding:
    severity: str  # "error" | "warning"
    code: str
    message: str
    requirement_id: Optional[str] = None


LINT_CODES = (
    "undeclared-variable",
    "type-mismatch",
    "undeclared-mode",
    "unmapped-abstract-symbol",
    "overlapping-modes",
    "dangling-parent",
    "duplicate-id",
)


@dataclass(frozen=True)
class Project:
    name: str
    requirements: tuple[RequirementRecord, ...] = ()
    glossary: Glossary = field(default_factory=Glossary)
    mappings: tuple[AbstractionMapping, ...] = ()
    scenarios: tuple[ScenarioRecord, ...] = ()

    def requirement(self, req_id: str) -> Optional[RequirementRecord]:
        for r in self.requirements:
            if r.id == req_id:
                return r
        return None

    def children_of(self, req_id: str) -> list[RequirementRecord]:
        return [r for r in self.requirements if req_id in r.parent_ids]


def validate_project(project: Project) -> list[LintFinding]:
    """Structural check: unique ids, well-formed id syntax, resolvable
    parent links, no self-parenting. Violations are data, not failures."""
    findings: list[LintFinding] = []
    seen: set[str] = set()
    for r in project.requirements:
        if r.id in seen:
            findings.append(
                LintFinding("error", "duplicate-id", f"requirement id {r.id!r} declared twice", r.id)
            )
        seen.add(r.id)
    ids = {r.id for r in project.requirements}
    for r in project.requirements:
        if len(set(r.parent_ids)) != len(r.parent_ids):
            findings.append(
                LintFinding("error", "dangling-parent", f"{r.id} lists a parent twice", r.id)
            )
        for p in r.parent_ids:
            if p == r.id:
                findings.append(
                    LintFinding("error", "dangling-parent", f"{r.id} lists itself as parent", r.id)
                )
            elif p not in ids:
                findings.append(
                    LintFinding("error", "dangling-parent", f"{r.id} names missing parent {p!r}", r.id)
                )
        # A dotted id that declares parent links must be able to resolve the
        # id prefix before the dot.
        if "." in r.id and r.parent_ids:
            prefix = r.id.rsplit(".", 1)[0]
            if prefix not in ids:
                findings.append(
                    LintFinding(
                        "error",
                        "dangling-parent",
                        f"{r.id} has no requirement named by its prefix {prefix!r}",
                        r.id,
                    )
                )
    return findings
