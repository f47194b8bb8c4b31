"""Template classification and temporal-logic compilation.

Classifies an AST into one of the four supported semantic templates and
compiles it to equivalent future-time and past-time formulas, plus a
timeline diagram model with mode (M), trigger (TC) and stop (SC) labels.

Template semantics (realised identically by the direct oracle in trace.py):
scope intervals are the whole trace, or each maximal run where the mode
variable is true; trigger points are rising edges of the condition within an
interval; "eventually" demands the response at some later index of the same
interval, "until" from the trigger up to (excluding) the first index where
the stop condition holds (through the interval end when it never does), and
"always" everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

from . import formula as fl
from . import parser
from .model import FretishAst, Var
from .trace import UnsupportedTemplate

SUPPORTED_TEMPLATES = {
    ("null", "regular", "eventually"),
    ("null", "regular", "until"),
    ("in", "regular", "until"),
    ("null", "null", "always"),
}


@dataclass(frozen=True)
class TemplateKey:
    """Triple (scope-option, condition-option, timing-option) selecting the
    formalisation semantics; only the four supported keys are constructible."""

    scope_option: str
    condition_option: str
    timing_option: str

    def __post_init__(self) -> None:
        key = (self.scope_option, self.condition_option, self.timing_option)
        if key not in SUPPORTED_TEMPLATES:
            raise UnsupportedTemplate(*key)

    def short_form(self) -> str:
        return f"{self.scope_option},{self.condition_option},{self.timing_option}"


def classify_template(ast: FretishAst) -> TemplateKey:
    """Pure function of which optional AST fields are populated."""
    scope = "in" if ast.scope_mode is not None else "null"
    cond = "regular" if ast.condition() is not None else "null"
    key = (scope, cond, ast.timing.kind)
    if key not in SUPPORTED_TEMPLATES:
        raise UnsupportedTemplate(*key)
    return TemplateKey(*key)


def _rise(of: fl.Formula) -> fl.Formula:
    # Rising edge: holds now, and either the trace just started or it did
    # not hold one step ago. Previous is the one past operator a future-time
    # formula may use.
    return fl.And(of, fl.Or(fl.FirstPoint(), fl.Previous(fl.Not(of))))


def formalize_ft(ast: FretishAst) -> fl.Formula:
    """Future-time formula; its value at index 0 equals the direct template
    semantics on the same trace."""
    key = classify_template(ast)
    r = fl.Atom(ast.response)
    if key.timing_option == "always":
        return fl.Globally(r)
    cond = ast.condition()
    assert cond is not None
    c: fl.Formula = fl.Atom(cond)
    if key.timing_option == "eventually":
        return fl.Globally(fl.Implies(_rise(c), fl.Finally(r)))
    stop = ast.timing.stop
    assert stop is not None
    s = fl.Atom(stop)
    if key.scope_option == "in":
        mode = fl.Atom(Var(ast.scope_mode or ""))
        gate = fl.And(mode, c)
        interval_end: fl.Formula = fl.Or(fl.LastPoint(), fl.Not(fl.Next(mode)))
    else:
        gate = c
        interval_end = fl.LastPoint()
    # Response holds from the trigger until the stop, or through the end of
    # the interval when the stop never arrives; a stop at the trigger itself
    # discharges the obligation.
    hold = fl.Until(r, fl.Or(s, fl.And(interval_end, r)))
    obligation = fl.And(fl.Or(r, s), fl.Implies(fl.Not(s), hold))
    return fl.Globally(fl.Implies(_rise(gate), obligation))


def formalize_pt(ast: FretishAst) -> fl.Formula:
    """Past-time formula; its value at the final index equals the direct
    template semantics on the whole trace. Shaped as the negation of a
    backwards search for a violation."""
    key = classify_template(ast)
    r = fl.Atom(ast.response)
    if key.timing_option == "always":
        return fl.Historically(r)
    cond = ast.condition()
    assert cond is not None
    c: fl.Formula = fl.Atom(cond)
    if key.timing_option == "eventually":
        # Violated iff some trigger is never followed by the response: the
        # final suffix is response-free back to a rising edge.
        return fl.Not(fl.Since(fl.Not(r), fl.And(_rise(c), fl.Not(r))))
    stop = ast.timing.stop
    assert stop is not None
    s = fl.Atom(stop)
    if key.scope_option == "in":
        mode = fl.Atom(Var(ast.scope_mode or ""))
        gate = fl.And(mode, c)
        cont: fl.Formula = fl.And(mode, fl.Not(s))
    else:
        gate = c
        cont = fl.Not(s)
    # Violated iff the response fails somewhere inside a stop-free stretch
    # of the interval that began at a trigger.
    violation = fl.And(fl.Not(r), fl.Since(cont, fl.And(_rise(gate), fl.Not(s))))
    return fl.Not(fl.Once(violation))


# ---------------------------------------------------------------------------
# Diagram model


@dataclass(frozen=True)
class DiagramModel:
    """Timeline summary: mode (M), triggering condition (TC), stopping
    condition (SC), obligation shape, and the response."""

    mode_label: Optional[str]
    trigger_label: str
    stop_label: str
    obligation: str  # "eventual" | "continuous-until-stop" | "continuous-always"
    response_label: str


def render_diagram(ast: FretishAst) -> DiagramModel:
    key = classify_template(ast)
    cond = ast.condition()
    obligation = {
        "eventually": "eventual",
        "until": "continuous-until-stop",
        "always": "continuous-always",
    }[key.timing_option]
    return DiagramModel(
        mode_label=ast.scope_mode,
        trigger_label=parser.print_expr(cond) if cond is not None else "none",
        stop_label=parser.print_expr(ast.timing.stop) if ast.timing.stop is not None else "none",
        obligation=obligation,
        response_label=parser.print_expr(ast.response),
    )


_BAR_BODY = {
    "eventual": "~~~~~~~~R~~~~~~~~",
    "continuous-until-stop": "=================",
    "continuous-always": "=====================",
}


def diagram_ascii(model: DiagramModel) -> str:
    """One timeline row plus a legend line per label."""
    body = _BAR_BODY[model.obligation]
    if model.obligation == "continuous-always":
        bar = f"|{body}|"
    elif model.obligation == "continuous-until-stop":
        bar = f"|--TC{body}SC--|"
    else:
        bar = f"|--TC{body}-->|"
    prefix = f"M:{model.mode_label} " if model.mode_label is not None else ""
    lines = [prefix + bar]
    if model.trigger_label != "none":
        lines.append(f"  TC: {model.trigger_label}")
    if model.stop_label != "none":
        lines.append(f"  SC: {model.stop_label}")
    lines.append(f"  R:  {model.response_label}")
    return "\n".join(lines) + "\n"


def diagram_svg(model: DiagramModel) -> str:
    """Static SVG variant with the same M/TC/SC labels."""
    width, height = 640, 150
    y_bar = 46
    rows: list[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="12">'
    ]
    x0, x1 = 40, width - 40
    rows.append(f'<line x1="{x0}" y1="{y_bar}" x2="{x1}" y2="{y_bar}" stroke="black"/>')
    rows.append(f'<line x1="{x0}" y1="{y_bar - 8}" x2="{x0}" y2="{y_bar + 8}" stroke="black"/>')
    rows.append(f'<line x1="{x1}" y1="{y_bar - 8}" x2="{x1}" y2="{y_bar + 8}" stroke="black"/>')
    y_text = 70
    if model.mode_label is not None:
        rows.append(f'<text x="{x0}" y="20">M: {escape(model.mode_label)}</text>')
    if model.trigger_label != "none":
        xa = x0 + 100
        rows.append(f'<line x1="{xa}" y1="{y_bar - 10}" x2="{xa}" y2="{y_bar + 10}" stroke="black"/>')
        rows.append(f'<text x="{xa - 10}" y="{y_bar - 14}">TC</text>')
        rows.append(f'<text x="{x0}" y="{y_text}">TC: {escape(model.trigger_label)}</text>')
        y_text += 18
    if model.stop_label != "none":
        xb = x1 - 100
        rows.append(f'<line x1="{xb}" y1="{y_bar - 10}" x2="{xb}" y2="{y_bar + 10}" stroke="black"/>')
        rows.append(f'<text x="{xb - 10}" y="{y_bar - 14}">SC</text>')
        rows.append(f'<text x="{x0}" y="{y_text}">SC: {escape(model.stop_label)}</text>')
        y_text += 18
    rows.append(f'<text x="{x0}" y="{y_text}">R: {escape(model.response_label)}</text>')
    rows.append(f'<text x="{x0}" y="{y_text + 18}">obligation: {escape(model.obligation)}</text>')
    rows.append("</svg>")
    return "\n".join(rows) + "\n"
