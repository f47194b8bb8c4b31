"""Finite traces and everything evaluated over them.

Holds expression evaluation, finite-trace formula semantics, the direct
template-semantics oracle (interval/trigger scanning with no temporal-formula
machinery), and exhaustive trace enumeration for bounded checking.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

from . import formula as fl
from . import parser
from .model import (
    Add,
    And,
    Binary,
    BoolLit,
    BUILTIN_FUNCTIONS,
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
    Value,
    Var,
    VariableDecl,
)

DEFAULT_BUDGET = 5_000_000


class UnboundSymbol(Exception):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"symbol {name!r} is not bound in the trace state")


class TypeMismatch(Exception):
    def __init__(self, node: Expr, message: str):
        self.node = node
        super().__init__(f"{message} in {parser.print_expr(node)}")


class BudgetExceeded(Exception):
    def __init__(self, count: int, budget: int):
        self.count = count
        self.budget = budget
        super().__init__(f"enumeration of {count} traces exceeds the budget of {budget}")


class UnsupportedTemplate(Exception):
    """Raised for field combinations outside the four supported templates."""

    def __init__(self, scope_option: str, condition_option: str, timing_option: str):
        self.key = (scope_option, condition_option, timing_option)
        super().__init__(
            "no semantics for template "
            f"({scope_option}, {condition_option}, {timing_option})"
        )


# ---------------------------------------------------------------------------
# Traces


@dataclass(frozen=True)
class Trace:
    """Non-empty rectangular sequence of states. Fully-applied call terms are
    single columns named by their printed form (e.g. "sensorValue(S)")."""

    variables: tuple[str, ...]
    states: tuple[tuple[Value, ...], ...]

    def __post_init__(self) -> None:
        if not self.states:
            raise ValueError("a trace needs at least one state")
        for row in self.states:
            if len(row) != len(self.variables):
                raise ValueError("every state must bind the same variable set")

    def __len__(self) -> int:
        return len(self.states)

    def state(self, i: int) -> dict[str, Value]:
        return dict(zip(self.variables, self.states[i]))

    def column(self, name: str) -> list[Value]:
        idx = self.variables.index(name)
        return [row[idx] for row in self.states]


def value_to_json(v: Value) -> object:
    if v is None or isinstance(v, bool):
        return v
    if isinstance(v, Fraction):
        return {"num": fraction_to_decimal(v)}
    return {"enum": v}


def value_from_json(obj: object, where: str = "value") -> Value:
    if obj is None or isinstance(obj, bool):
        return obj
    if isinstance(obj, dict):
        if set(obj) == {"num"}:
            return Fraction(str(obj["num"]))
        if set(obj) == {"enum"}:
            return str(obj["enum"])
    raise ValueError(f"bad trace {where}: {obj!r}")


def fraction_to_decimal(x: Fraction) -> str:
    """Exact decimal rendering; valid whenever the value originated from
    decimal literals combined with +/-/abs."""
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{x} has no finite decimal form")
    digits = max(twos, fives)
    scaled = x.numerator * 10**digits // x.denominator
    if digits == 0:
        return str(scaled)
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def trace_to_json(t: Trace) -> dict:
    return {
        "variables": list(t.variables),
        "states": [[value_to_json(v) for v in row] for row in t.states],
    }


def trace_from_json(doc: dict) -> Trace:
    variables = tuple(str(n) for n in doc["variables"])
    states = tuple(
        tuple(value_from_json(v, f"states[{i}][{j}]") for j, v in enumerate(row))
        for i, row in enumerate(doc["states"])
    )
    return Trace(variables, states)


def load_trace(path: str) -> Trace:
    with open(path, encoding="utf-8") as fh:
        return trace_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# Expression evaluation


def _as_number(v: Value, node: Expr) -> Optional[Fraction]:
    # null propagates through arithmetic; booleans/enums are type errors.
    if v is None:
        return None
    if isinstance(v, bool) or isinstance(v, str):
        raise TypeMismatch(node, f"expected a number, got {v!r}")
    return v


def _as_bool(v: Value, node: Expr) -> bool:
    if not isinstance(v, bool):
        raise TypeMismatch(node, f"expected a boolean, got {v!r}")
    return v


def eval_expr(e: Expr, state: Mapping[str, Value]) -> Value:
    """Evaluate over one trace state. diff(a,b) is |a-b|; comparisons other
    than =/!= involving null are false; => is material implication."""
    if isinstance(e, BoolLit):
        return e.value
    if isinstance(e, NullLit):
        return None
    if isinstance(e, NumLit):
        return e.as_fraction()
    if isinstance(e, Var):
        if e.name not in state:
            raise UnboundSymbol(e.name)
        return state[e.name]
    if isinstance(e, Call):
        if e.name == "diff" and len(e.args) == 2:
            a = _as_number(eval_expr(e.args[0], state), e)
            b = _as_number(eval_expr(e.args[1], state), e)
            return None if a is None or b is None else abs(a - b)
        if e.name == "abs" and len(e.args) == 1:
            a = _as_number(eval_expr(e.args[0], state), e)
            return None if a is None else abs(a)
        name = parser.term_name(e)
        if name not in state:
            raise UnboundSymbol(name)
        return state[name]
    if isinstance(e, Not):
        return not _as_bool(eval_expr(e.arg, state), e)
    if isinstance(e, Neg):
        v = _as_number(eval_expr(e.arg, state), e)
        return None if v is None else -v
    assert isinstance(e, Binary)
    if isinstance(e, (And, Or, Implies)):
        lhs = _as_bool(eval_expr(e.lhs, state), e)
        rhs = _as_bool(eval_expr(e.rhs, state), e)
        if isinstance(e, And):
            return lhs and rhs
        if isinstance(e, Or):
            return lhs or rhs
        return (not lhs) or rhs
    if isinstance(e, (Add, Sub)):
        lhs = _as_number(eval_expr(e.lhs, state), e)
        rhs = _as_number(eval_expr(e.rhs, state), e)
        if lhs is None or rhs is None:
            return None
        return lhs + rhs if isinstance(e, Add) else lhs - rhs
    lhs = eval_expr(e.lhs, state)
    rhs = eval_expr(e.rhs, state)
    if isinstance(e, (Eq, Ne)):
        if lhs is None or rhs is None:
            result = lhs is None and rhs is None
        elif isinstance(lhs, bool) != isinstance(rhs, bool) or isinstance(lhs, str) != isinstance(rhs, str):
            raise TypeMismatch(e, f"cannot compare {lhs!r} with {rhs!r}")
        else:
            result = lhs == rhs
        return result if isinstance(e, Eq) else not result
    # Ordered comparisons: false as soon as null is involved.
    if lhs is None or rhs is None:
        return False
    a = _as_number(lhs, e)
    b = _as_number(rhs, e)
    assert a is not None and b is not None
    if isinstance(e, Lt):
        return a < b
    if isinstance(e, Le):
        return a <= b
    if isinstance(e, Gt):
        return a > b
    assert isinstance(e, Ge)
    return a >= b


def _require_bool(e: Expr, v: Value) -> bool:
    if not isinstance(v, bool):
        raise TypeMismatch(e, f"condition evaluated to non-boolean {v!r}")
    return v


def _holds(e: Expr, t: Trace, i: int) -> bool:
    return _require_bool(e, eval_expr(e, t.state(i)))


# ---------------------------------------------------------------------------
# Formula evaluation (standard finite-trace semantics)


def _window(i: int, n: int, interval: fl.Interval, future: bool) -> range:
    if interval is None:
        return range(i, n) if future else range(i, -1, -1)
    lo, hi = interval
    if future:
        return range(min(i + lo, n), min(i + hi + 1, n))
    return range(max(i - lo, -1), max(i - hi - 1, -1), -1)


def eval_formula(f: fl.Formula, t: Trace, i: int) -> bool:
    """Evaluate at index i. Next/Previous are false at the trace boundary;
    Until(a,b) needs b at some j >= i with a at every i <= k < j; Since
    mirrors Until into the past."""
    if not 0 <= i < len(t):
        raise IndexError(f"index {i} outside trace of length {len(t)}")
    n = len(t)
    if isinstance(f, fl.Atom):
        return _holds(f.expr, t, i)
    if isinstance(f, fl.FirstPoint):
        return i == 0
    if isinstance(f, fl.LastPoint):
        return i == n - 1
    if isinstance(f, fl.Not):
        return not eval_formula(f.arg, t, i)
    if isinstance(f, fl.And):
        return eval_formula(f.lhs, t, i) and eval_formula(f.rhs, t, i)
    if isinstance(f, fl.Or):
        return eval_formula(f.lhs, t, i) or eval_formula(f.rhs, t, i)
    if isinstance(f, fl.Implies):
        return (not eval_formula(f.lhs, t, i)) or eval_formula(f.rhs, t, i)
    if isinstance(f, fl.Next):
        return i + 1 < n and eval_formula(f.arg, t, i + 1)
    if isinstance(f, fl.Previous):
        return i - 1 >= 0 and eval_formula(f.arg, t, i - 1)
    if isinstance(f, fl.Finally):
        return any(eval_formula(f.arg, t, j) for j in _window(i, n, f.interval, True))
    if isinstance(f, fl.Globally):
        return all(eval_formula(f.arg, t, j) for j in _window(i, n, f.interval, True))
    if isinstance(f, fl.Once):
        return any(eval_formula(f.arg, t, j) for j in _window(i, n, f.interval, False))
    if isinstance(f, fl.Historically):
        return all(eval_formula(f.arg, t, j) for j in _window(i, n, f.interval, False))
    if isinstance(f, fl.Until):
        for j in _window(i, n, f.interval, True):
            if eval_formula(f.rhs, t, j):
                return all(eval_formula(f.lhs, t, k) for k in range(i, j))
        return False
    assert isinstance(f, fl.Since)
    for j in _window(i, n, f.interval, False):
        if eval_formula(f.rhs, t, j):
            return all(eval_formula(f.lhs, t, k) for k in range(j + 1, i + 1))
    return False


# ---------------------------------------------------------------------------
# Direct template semantics (the oracle)


def _template_shape(ast: FretishAst) -> tuple[str, str, str]:
    scope = "in" if ast.scope_mode is not None else "null"
    cond = "regular" if ast.condition() is not None else "null"
    timing = ast.timing.kind
    key = (scope, cond, timing)
    supported = {
        ("null", "regular", "eventually"),
        ("null", "regular", "until"),
        ("in", "regular", "until"),
        ("null", "null", "always"),
    }
    if key not in supported:
        raise UnsupportedTemplate(*key)
    return key


def _mode_intervals(ast: FretishAst, states: list[dict[str, Value]]) -> list[tuple[int, int]]:
    """Maximal runs where the scope applies: the whole trace when unscoped,
    else runs of indices where the mode variable is true."""
    if ast.scope_mode is None:
        return [(0, len(states) - 1)]
    mode = Var(ast.scope_mode)
    runs = []
    start = None
    for i, state in enumerate(states):
        on = _require_bool(mode, eval_expr(mode, state))
        if on and start is None:
            start = i
        elif not on and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(states) - 1))
    return runs


def eval_template_direct(ast: FretishAst, t: Trace) -> bool:
    """Reference semantics by interval/trigger scanning.

    Trigger points are rising edges of the condition within an interval.
    Obligations: eventually -- response at some later index of the interval;
    until -- response from the trigger up to (excluding) the first index
    where the stop condition holds, or through the interval end when it
    never does; always -- response at every index.
    """
    _scope, _cond_opt, timing = _template_shape(ast)
    states = [t.state(i) for i in range(len(t))]
    resp = ast.response

    def holds(e: Expr, i: int) -> bool:
        return _require_bool(e, eval_expr(e, states[i]))

    if timing == "always":
        return all(holds(resp, i) for i in range(len(states)))
    cond = ast.condition()
    assert cond is not None
    for lo, hi in _mode_intervals(ast, states):
        for i in range(lo, hi + 1):
            if not holds(cond, i):
                continue
            if i > lo and holds(cond, i - 1):
                continue  # not a rising edge
            if timing == "eventually":
                if not any(holds(resp, j) for j in range(i, hi + 1)):
                    return False
            else:
                stop = ast.timing.stop
                assert stop is not None
                for j in range(i, hi + 1):
                    if holds(stop, j):
                        break
                    if not holds(resp, j):
                        return False
    return True


# ---------------------------------------------------------------------------
# Compiled evaluation (hot path for bounded checking)
#
# The closures reproduce eval_expr/eval_template_direct exactly; the
# interpretive versions above stay the independent oracle, and every
# counterexample found through the compiled path is re-checked against them.


def compile_expr(e: Expr, index: Mapping[str, int]):
    """Compile to a closure over one state row (tuple in column order)."""
    if isinstance(e, BoolLit):
        value = e.value
        return lambda row: value
    if isinstance(e, NullLit):
        return lambda row: None
    if isinstance(e, NumLit):
        number = e.as_fraction()
        return lambda row: number
    if isinstance(e, Var):
        if e.name not in index:
            raise UnboundSymbol(e.name)
        at = index[e.name]
        return lambda row: row[at]
    if isinstance(e, Call):
        if e.name == "diff" and len(e.args) == 2:
            fa = compile_expr(e.args[0], index)
            fb = compile_expr(e.args[1], index)

            def diff(row, node=e):
                a = _as_number(fa(row), node)
                b = _as_number(fb(row), node)
                return None if a is None or b is None else abs(a - b)

            return diff
        if e.name == "abs" and len(e.args) == 1:
            fa = compile_expr(e.args[0], index)

            def absolute(row, node=e):
                a = _as_number(fa(row), node)
                return None if a is None else abs(a)

            return absolute
        name = parser.term_name(e)
        if name not in index:
            raise UnboundSymbol(name)
        at = index[name]
        return lambda row: row[at]
    if isinstance(e, Not):
        fa = compile_expr(e.arg, index)
        return lambda row, node=e: not _as_bool(fa(row), node)
    if isinstance(e, Neg):
        fa = compile_expr(e.arg, index)

        def negate(row, node=e):
            v = _as_number(fa(row), node)
            return None if v is None else -v

        return negate
    assert isinstance(e, Binary)
    lhs_fn = compile_expr(e.lhs, index)
    rhs_fn = compile_expr(e.rhs, index)
    if isinstance(e, And):
        return lambda row, node=e: _as_bool(lhs_fn(row), node) and _as_bool(rhs_fn(row), node)
    if isinstance(e, Or):
        return lambda row, node=e: _as_bool(lhs_fn(row), node) or _as_bool(rhs_fn(row), node)
    if isinstance(e, Implies):
        return lambda row, node=e: (not _as_bool(lhs_fn(row), node)) or _as_bool(rhs_fn(row), node)
    if isinstance(e, (Add, Sub)):
        sign = 1 if isinstance(e, Add) else -1

        def arith(row, node=e):
            a = _as_number(lhs_fn(row), node)
            b = _as_number(rhs_fn(row), node)
            return None if a is None or b is None else a + sign * b

        return arith
    if isinstance(e, (Eq, Ne)):
        want = isinstance(e, Eq)

        def equal(row, node=e):
            lhs = lhs_fn(row)
            rhs = rhs_fn(row)
            if lhs is None or rhs is None:
                result = lhs is None and rhs is None
            elif isinstance(lhs, bool) != isinstance(rhs, bool) or isinstance(
                lhs, str
            ) != isinstance(rhs, str):
                raise TypeMismatch(node, f"cannot compare {lhs!r} with {rhs!r}")
            else:
                result = lhs == rhs
            return result is want

        return equal
    op = {Lt: operator.lt, Le: operator.le, Gt: operator.gt, Ge: operator.ge}[type(e)]

    def compare(row, node=e):
        lhs = lhs_fn(row)
        rhs = rhs_fn(row)
        if lhs is None or rhs is None:
            return False
        return op(_as_number(lhs, node), _as_number(rhs, node))

    return compare


def _compile_bool(e: Expr, index: Mapping[str, int]):
    fn = compile_expr(e, index)

    def check(row, node=e):
        return _require_bool(node, fn(row))

    return check


def compile_template(ast: FretishAst, variables: Sequence[str]):
    """Compile a requirement to a predicate over a state-row sequence,
    semantically identical to eval_template_direct."""
    _scope, _cond_opt, timing = _template_shape(ast)
    index = {name: i for i, name in enumerate(variables)}
    response = _compile_bool(ast.response, index)
    if timing == "always":
        return lambda states: all(response(row) for row in states)
    cond = ast.condition()
    assert cond is not None
    trigger = _compile_bool(cond, index)
    stop = None
    if ast.timing.stop is not None:
        stop = _compile_bool(ast.timing.stop, index)
    mode = None
    if ast.scope_mode is not None:
        mode = _compile_bool(Var(ast.scope_mode), index)

    def intervals(states):
        if mode is None:
            return [(0, len(states) - 1)]
        runs = []
        start = None
        for i, row in enumerate(states):
            if mode(row) and start is None:
                start = i
            elif not mode(row) and start is not None:
                runs.append((start, i - 1))
                start = None
        if start is not None:
            runs.append((start, len(states) - 1))
        return runs

    if timing == "eventually":

        def check_eventually(states):
            for lo, hi in intervals(states):
                for i in range(lo, hi + 1):
                    if not trigger(states[i]):
                        continue
                    if i > lo and trigger(states[i - 1]):
                        continue
                    if not any(response(states[j]) for j in range(i, hi + 1)):
                        return False
            return True

        return check_eventually

    assert stop is not None

    def check_until(states):
        for lo, hi in intervals(states):
            for i in range(lo, hi + 1):
                if not trigger(states[i]):
                    continue
                if i > lo and trigger(states[i - 1]):
                    continue
                for j in range(i, hi + 1):
                    if stop(states[j]):
                        break
                    if not response(states[j]):
                        return False
        return True

    return check_until


# ---------------------------------------------------------------------------
# Column extraction and enumeration


def expr_columns(e: Expr) -> list[str]:
    """Trace columns an expression reads, in first-use order. Non-builtin
    call terms are opaque columns; builtin arguments are descended."""
    out: list[str] = []

    def visit(node: Expr) -> None:
        if isinstance(node, Var):
            if node.name not in out:
                out.append(node.name)
        elif isinstance(node, Call):
            if node.name in BUILTIN_FUNCTIONS and len(node.args) == BUILTIN_FUNCTIONS[node.name]:
                for a in node.args:
                    visit(a)
            else:
                name = parser.term_name(node)
                if name not in out:
                    out.append(name)
        elif isinstance(node, (Not, Neg)):
            visit(node.arg)
        elif isinstance(node, Binary):
            visit(node.lhs)
            visit(node.rhs)

    visit(e)
    return out


def ast_columns(ast: FretishAst) -> list[str]:
    out: list[str] = []
    if ast.scope_mode is not None:
        out.append(ast.scope_mode)
    for e in (ast.when_cond, ast.if_cond, ast.timing.stop, ast.response):
        if e is not None:
            for name in expr_columns(e):
                if name not in out:
                    out.append(name)
    return out


def enumerate_traces(
    decls: Sequence[VariableDecl],
    length: int,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Trace]:
    """Yield every rectangular trace of the given length exactly once, in
    lexicographic order of (state index, variable order, domain order)."""
    if length < 1:
        raise ValueError("trace length must be positive")
    domains: list[tuple[Value, ...]] = []
    for d in decls:
        if d.domain is None or not d.domain:
            raise ValueError(f"variable {d.name!r} has no finite domain")
        domains.append(d.domain)
    product = 1
    for dom in domains:
        product *= len(dom)
    count = product**length
    if count > budget:
        raise BudgetExceeded(count, budget)
    names = tuple(d.name for d in decls)
    n_vars = len(domains)

    def rec(state_idx: int, rows: list[tuple[Value, ...]]) -> Iterator[Trace]:
        if state_idx == length:
            yield Trace(names, tuple(rows))
            return
        for row in _rows(0, []):
            rows.append(row)
            yield from rec(state_idx + 1, rows)
            rows.pop()

    def _rows(var_idx: int, acc: list[Value]) -> Iterator[tuple[Value, ...]]:
        if var_idx == n_vars:
            yield tuple(acc)
            return
        for v in domains[var_idx]:
            acc.append(v)
            yield from _rows(var_idx + 1, acc)
            acc.pop()

    yield from rec(0, [])


def trace_count(decls: Sequence[VariableDecl], length: int) -> int:
    product = 1
    for d in decls:
        product *= len(d.domain or ())
    return product**length
