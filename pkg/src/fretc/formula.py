"""Temporal formulas over expression atoms.

Propositional core plus future operators (Next, Until, Finally, Globally) and
past operators (Previous, Since, Once, Historically), with boundary markers
FirstPoint/LastPoint. Every temporal operator carries an optional metric
interval [lo, hi] in abstract time steps; the shipped templates never emit
one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from . import parser
from .model import Expr

Interval = Optional[tuple[int, int]]


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Atom(Formula):
    expr: Expr


@dataclass(frozen=True)
class FirstPoint(Formula):
    pass


@dataclass(frozen=True)
class LastPoint(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Or(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula
    interval: Interval = None


@dataclass(frozen=True)
class Previous(Formula):
    arg: Formula
    interval: Interval = None


@dataclass(frozen=True)
class Finally(Formula):
    arg: Formula
    interval: Interval = None


@dataclass(frozen=True)
class Globally(Formula):
    arg: Formula
    interval: Interval = None


@dataclass(frozen=True)
class Once(Formula):
    arg: Formula
    interval: Interval = None


@dataclass(frozen=True)
class Historically(Formula):
    arg: Formula
    interval: Interval = None


@dataclass(frozen=True)
class Until(Formula):
    lhs: Formula
    rhs: Formula
    interval: Interval = None


@dataclass(frozen=True)
class Since(Formula):
    lhs: Formula
    rhs: Formula
    interval: Interval = None


FUTURE_OPS = (Next, Finally, Globally, Until)
PAST_OPS = (Previous, Once, Historically, Since)


def walk(f: Formula) -> Iterator[Formula]:
    yield f
    for name in ("arg", "lhs", "rhs"):
        child = getattr(f, name, None)
        if isinstance(child, Formula):
            yield from walk(child)


def is_future_time(f: Formula) -> bool:
    """Future-time formulas may use past ops only as Previous (edge detection)."""
    return all(not isinstance(g, (Once, Historically, Since)) for g in walk(f))


def is_past_time(f: Formula) -> bool:
    return all(not isinstance(g, FUTURE_OPS) for g in walk(f))


_UNARY_SYMBOL = {
    Next: "X",
    Previous: "Y",
    Finally: "F",
    Globally: "G",
    Once: "O",
    Historically: "H",
}


def _interval_suffix(interval: Interval) -> str:
    return "" if interval is None else f"[{interval[0]},{interval[1]}]"


def to_text(f: Formula) -> str:
    """Prefix notation with atoms as quoted canonical expressions, e.g.
    (G (-> (& "c" (| first (Y (! "c")))) (F "r")))."""
    if isinstance(f, Atom):
        return f'"{parser.print_expr(f.expr)}"'
    if isinstance(f, FirstPoint):
        return "first"
    if isinstance(f, LastPoint):
        return "last"
    if isinstance(f, Not):
        return f"(! {to_text(f.arg)})"
    if isinstance(f, And):
        return f"(& {to_text(f.lhs)} {to_text(f.rhs)})"
    if isinstance(f, Or):
        return f"(| {to_text(f.lhs)} {to_text(f.rhs)})"
    if isinstance(f, Implies):
        return f"(-> {to_text(f.lhs)} {to_text(f.rhs)})"
    if isinstance(f, Until):
        return f"(U{_interval_suffix(f.interval)} {to_text(f.lhs)} {to_text(f.rhs)})"
    if isinstance(f, Since):
        return f"(S{_interval_suffix(f.interval)} {to_text(f.lhs)} {to_text(f.rhs)})"
    sym = _UNARY_SYMBOL[type(f)]
    return f"({sym}{_interval_suffix(f.interval)} {to_text(f.arg)})"
