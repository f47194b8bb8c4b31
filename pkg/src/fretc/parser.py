"""FRETISH text handling: tokenizer, recursive-descent parser, canonical
printer, and lossless JSON parse-tree export.

Grammar (whitespace between tokens is insignificant):

    requirement := [mode-ident] [when-clause] [if-clause]
                   component-ident "shall" [timing] response
    when-clause := "when" "(" expr ")"
    if-clause   := "if" "(" expr ")"
    timing      := "until" "(" expr ")" | "always"
    response    := ["satisfy"] expr

Expression precedence, loosest to tightest: "=>" (right-assoc), "|", "&",
"!", comparisons (non-assoc), "+"/"-" (left-assoc), primaries. A "!" applied
directly to an identifier or parenthesised expression binds at primary level,
so "!pilotInput => x" reads as "(!pilotInput) => x".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .model import (
    Add,
    And,
    Binary,
    BoolLit,
    Call,
    Eq,
    Expr,
    FretishAst,
    Ge,
    Gt,
    Implies,
    Le,
    Lt,
    Ne,
    Neg,
    Not,
    NullLit,
    NumLit,
    Or,
    Sub,
    Timing,
    Var,
)

KEYWORDS = {"when", "if", "shall", "until", "always", "satisfy", "true", "false", "null"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<number>[0-9]+(?:\.[0-9]+)?)
  | (?P<op>=>|<=|>=|!=|[()<>=!&|+\-,])
    """,
    re.VERBOSE,
)


class ParseError(Exception):
    """Input rejected at `offset`; carries what was expected and found."""

    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {offset}: expected {expected}, found {found}")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "keyword" | "number" | "op" | "eof"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(pos, "a token", repr(text[pos]))
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        kind = m.lastgroup or "op"
        lexeme = m.group()
        if kind == "ident" and lexeme in KEYWORDS:
            kind = "keyword"
        tokens.append(Token(kind, lexeme, m.start()))
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def fail(self, expected: str) -> ParseError:
        tok = self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(tok.pos, expected, found)

    def expect_op(self, op: str, expected: Optional[str] = None) -> Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise self.fail(expected or repr(op))
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "keyword" or tok.text != word:
            raise self.fail(repr(word))
        return self.advance()

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in ops

    def at_keyword(self, *words: str) -> bool:
        tok = self.peek()
        return tok.kind == "keyword" and tok.text in words

    # -- expressions --------------------------------------------------------

    def expression(self) -> Expr:
        return self.implies()

    def implies(self) -> Expr:
        lhs = self.disjunction()
        if self.at_op("=>"):
            self.advance()
            return Implies(lhs, self.implies())  # right-assoc
        return lhs

    def disjunction(self) -> Expr:
        e = self.conjunction()
        while self.at_op("|"):
            self.advance()
            e = Or(e, self.conjunction())
        return e

    def conjunction(self) -> Expr:
        e = self.negation()
        while self.at_op("&"):
            self.advance()
            e = And(e, self.negation())
        return e

    def negation(self) -> Expr:
        # Loose "!" level between "&" and comparisons. A "!" directly before
        # an identifier or "(" instead binds at primary level (see primary()).
        if self.at_op("!") and not self._tight_not_follows():
            self.advance()
            return Not(self.negation())
        return self.comparison()

    def _tight_not_follows(self) -> bool:
        nxt = self.peek(1)
        return nxt.kind == "ident" or (nxt.kind == "op" and nxt.text == "(")

    def comparison(self) -> Expr:
        lhs = self.additive()
        ops = {"<": Lt, "<=": Le, ">": Gt, ">=": Ge, "=": Eq, "!=": Ne}
        tok = self.peek()
        if tok.kind == "op" and tok.text in ops:
            self.advance()
            return ops[tok.text](lhs, self.additive())  # non-associative
        return lhs

    def additive(self) -> Expr:
        e = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            return Neg(self.term())
        return self.primary()

    def primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "!":
            # Tight not: applies to exactly the next identifier/call/paren.
            self.advance()
            inner = self.peek()
            if inner.kind == "ident":
                return Not(self._ident_primary())
            if inner.kind == "op" and inner.text == "(":
                return Not(self._paren_primary())
            raise self.fail("an identifier or '(' after '!'")
        if tok.kind == "keyword" and tok.text in ("true", "false"):
            self.advance()
            return BoolLit(tok.text == "true")
        if tok.kind == "keyword" and tok.text == "null":
            self.advance()
            return NullLit()
        if tok.kind == "number":
            self.advance()
            return NumLit(tok.text)
        if tok.kind == "ident":
            return self._ident_primary()
        if tok.kind == "op" and tok.text == "(":
            return self._paren_primary()
        raise self.fail("an expression")

    def _ident_primary(self) -> Expr:
        name = self.advance().text
        if self.at_op("("):
            self.advance()
            args = [self.expression()]
            while self.at_op(","):
                self.advance()
                args.append(self.expression())
            self.expect_op(")")
            return Call(name, tuple(args))
        return Var(name)

    def _paren_primary(self) -> Expr:
        self.expect_op("(")
        e = self.expression()
        self.expect_op(")")
        return e

    # -- requirements -------------------------------------------------------

    def requirement(self) -> FretishAst:
        scope_mode = None
        tok = self.peek()
        if tok.kind == "ident":
            nxt = self.peek(1)
            # A leading identifier is a scope mode iff it is followed by
            # when/if or directly by a second identifier before "shall".
            if nxt.kind == "ident" or (nxt.kind == "keyword" and nxt.text in ("when", "if")):
                scope_mode = self.advance().text

        when_cond = None
        if self.at_keyword("when"):
            self.advance()
            when_cond = self._paren_primary()
        if_cond = None
        if self.at_keyword("if"):
            self.advance()
            if_cond = self._paren_primary()

        tok = self.peek()
        if tok.kind != "ident":
            raise self.fail("a component name (or a scope mode / when / if clause)")
        component = self.advance().text
        self.expect_keyword("shall")

        timing = Timing("eventually")
        if self.at_keyword("always"):
            self.advance()
            timing = Timing("always")
        elif self.at_keyword("until"):
            self.advance()
            timing = Timing("until", self._paren_primary())

        if self.at_keyword("satisfy"):
            self.advance()
        response = self.expression()

        tok = self.peek()
        if tok.kind != "eof":
            raise self.fail("end of requirement")
        return FretishAst(
            component=component,
            response=response,
            scope_mode=scope_mode,
            when_cond=when_cond,
            if_cond=if_cond,
            timing=timing,
        )


def parse_requirement(text: str) -> FretishAst:
    """Parse a full FRETISH requirement; raises ParseError on any bad input."""
    return _Parser(tokenize(text)).requirement()


def parse_expr(text: str) -> Expr:
    """Parse a bare expression (used for mapping definitions and traces)."""
    p = _Parser(tokenize(text))
    e = p.expression()
    if p.peek().kind != "eof":
        raise p.fail("end of expression")
    return e


# ---------------------------------------------------------------------------
# Canonical printing

_PREC_IMPLIES = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_CMP = 5
_PREC_ADD = 6
_PREC_NEG = 7
_PREC_PRIMARY = 8

_BIN_TABLE: dict[type, tuple[str, int]] = {
    Implies: ("=>", _PREC_IMPLIES),
    Or: ("|", _PREC_OR),
    And: ("&", _PREC_AND),
    Lt: ("<", _PREC_CMP),
    Le: ("<=", _PREC_CMP),
    Gt: (">", _PREC_CMP),
    Ge: (">=", _PREC_CMP),
    Eq: ("=", _PREC_CMP),
    Ne: ("!=", _PREC_CMP),
    Add: ("+", _PREC_ADD),
    Sub: ("-", _PREC_ADD),
}

_RIGHT_ASSOC = (Implies,)
_NON_ASSOC = (Lt, Le, Gt, Ge, Eq, Ne)


def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return _BIN_TABLE[type(e)][1]
    if isinstance(e, Neg):
        return _PREC_NEG
    # Printed "!" forms are self-delimiting: "!x" or "!( ... )".
    return _PREC_PRIMARY


def print_expr(e: Expr) -> str:
    """Canonical text with single spaces and minimal parentheses;
    parse_expr(print_expr(e)) is structurally equal to e."""
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, NullLit):
        return "null"
    if isinstance(e, NumLit):
        return e.text
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.name}({', '.join(print_expr(a) for a in e.args)})"
    if isinstance(e, Not):
        if isinstance(e.arg, (Var, Call)):
            return f"!{print_expr(e.arg)}"
        return f"!({print_expr(e.arg)})"
    if isinstance(e, Neg):
        if isinstance(e.arg, (NumLit, Var, Call)):
            return f"-{print_expr(e.arg)}"
        return f"-({print_expr(e.arg)})"
    assert isinstance(e, Binary)
    sym, prec = _BIN_TABLE[type(e)]
    if isinstance(e, _NON_ASSOC):
        lmin, rmin = prec + 1, prec + 1
    elif isinstance(e, _RIGHT_ASSOC):
        lmin, rmin = prec + 1, prec
    else:
        lmin, rmin = prec, prec + 1
    lhs = print_expr(e.lhs)
    if _prec(e.lhs) < lmin:
        lhs = f"({lhs})"
    rhs = print_expr(e.rhs)
    if _prec(e.rhs) < rmin:
        rhs = f"({rhs})"
    return f"{lhs} {sym} {rhs}"


def term_name(e: Expr) -> str:
    """Trace-column name of a variable or opaque call term: its printed form."""
    return print_expr(e)


def pretty_print(ast: FretishAst) -> str:
    """Canonical FRETISH text; re-parsing yields a structurally equal AST."""
    parts: list[str] = []
    if ast.scope_mode is not None:
        parts.append(ast.scope_mode)
    if ast.when_cond is not None:
        parts.append(f"when ({print_expr(ast.when_cond)})")
    if ast.if_cond is not None:
        parts.append(f"if ({print_expr(ast.if_cond)})")
    parts.append(ast.component)
    parts.append("shall")
    if ast.timing.kind == "always":
        parts.append("always")
    elif ast.timing.kind == "until":
        assert ast.timing.stop is not None
        parts.append(f"until ({print_expr(ast.timing.stop)})")
    parts.append(f"({print_expr(ast.response)})")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Parse-tree export (lossless JSON document)

_EXPR_KINDS: dict[type, str] = {
    And: "and",
    Or: "or",
    Implies: "implies",
    Add: "add",
    Sub: "sub",
    Lt: "lt",
    Le: "le",
    Gt: "gt",
    Ge: "ge",
    Eq: "eq",
    Ne: "ne",
}
_KINDS_EXPR = {v: k for k, v in _EXPR_KINDS.items()}


def expr_to_tree(e: Expr) -> dict:
    if isinstance(e, BoolLit):
        return {"kind": "bool", "value": e.value}
    if isinstance(e, NullLit):
        return {"kind": "null"}
    if isinstance(e, NumLit):
        return {"kind": "num", "value": e.text}
    if isinstance(e, Var):
        return {"kind": "var", "name": e.name}
    if isinstance(e, Call):
        return {"kind": "call", "name": e.name, "args": [expr_to_tree(a) for a in e.args]}
    if isinstance(e, Not):
        return {"kind": "not", "arg": expr_to_tree(e.arg)}
    if isinstance(e, Neg):
        return {"kind": "neg", "arg": expr_to_tree(e.arg)}
    assert isinstance(e, Binary)
    return {"kind": _EXPR_KINDS[type(e)], "lhs": expr_to_tree(e.lhs), "rhs": expr_to_tree(e.rhs)}


def expr_from_tree(doc: dict) -> Expr:
    kind = doc["kind"]
    if kind == "bool":
        return BoolLit(bool(doc["value"]))
    if kind == "null":
        return NullLit()
    if kind == "num":
        return NumLit(doc["value"])
    if kind == "var":
        return Var(doc["name"])
    if kind == "call":
        return Call(doc["name"], tuple(expr_from_tree(a) for a in doc["args"]))
    if kind == "not":
        return Not(expr_from_tree(doc["arg"]))
    if kind == "neg":
        return Neg(expr_from_tree(doc["arg"]))
    if kind in _KINDS_EXPR:
        return _KINDS_EXPR[kind](expr_from_tree(doc["lhs"]), expr_from_tree(doc["rhs"]))
    raise ValueError(f"unknown expression kind {kind!r}")


def export_parse_tree(ast: FretishAst) -> dict:
    """Machine-readable parse tree; ast_from_tree reconstructs an equal AST."""
    timing: dict = {"kind": ast.timing.kind}
    if ast.timing.kind == "until":
        assert ast.timing.stop is not None
        timing["stop"] = expr_to_tree(ast.timing.stop)
    return {
        "kind": "requirement",
        "scope": ast.scope_mode,
        "when": expr_to_tree(ast.when_cond) if ast.when_cond is not None else None,
        "if": expr_to_tree(ast.if_cond) if ast.if_cond is not None else None,
        "component": ast.component,
        "timing": timing,
        "response": expr_to_tree(ast.response),
    }


def ast_from_tree(doc: dict) -> FretishAst:
    if doc.get("kind") != "requirement":
        raise ValueError("document root must have kind 'requirement'")
    timing_doc = doc["timing"]
    if timing_doc["kind"] == "until":
        timing = Timing("until", expr_from_tree(timing_doc["stop"]))
    else:
        timing = Timing(timing_doc["kind"])
    return FretishAst(
        component=doc["component"],
        response=expr_from_tree(doc["response"]),
        scope_mode=doc["scope"],
        when_cond=expr_from_tree(doc["when"]) if doc["when"] is not None else None,
        if_cond=expr_from_tree(doc["if"]) if doc["if"] is not None else None,
        timing=timing,
    )
