import itertools

import pytest

from fretc import formula as fl
from fretc.model import Var
from fretc.parser import parse_requirement
from fretc.semantics import (
    DiagramModel,
    TemplateKey,
    classify_template,
    diagram_ascii,
    diagram_svg,
    formalize_ft,
    formalize_pt,
    render_diagram,
)
from fretc.trace import Trace, UnsupportedTemplate, eval_formula, eval_template_direct

UC5_R_1 = "if ((sensorfaults) & (trackingPilotCommands)) Controller shall (controlObjectives)"
UC5_R_1_1 = (
    "when (diff(r(i),y(i)) > E) if ((sensorValue(S) > nominalValue + R)"
    " | (sensorValue(S) < nominalValue - R) | (sensorValue(S) = null)"
    " & (pilotInput => setThrust = V2) & (observedThrust = V1)) Controller shall"
    " until (diff(r(i),y(i)) < e) (settlingTime >= 0) &"
    " (settlingTime <= settlingTimeMax) & (observedThrust = V2)"
)
UC5_R_14_2 = (
    "surgeStallPrevention when (diff(setNL, observedNL) < NLmax)"
    " if (!pilotInput => !surgeStallAvoidance) Controller shall"
    " until (diff(setNL, observedNL) > NLmin) (changeMode(nominal))"
)


def test_classify_parent():
    key = classify_template(parse_requirement(UC5_R_1))
    assert key == TemplateKey("null", "regular", "eventually")


def test_classify_child_until():
    key = classify_template(parse_requirement(UC5_R_1_1))
    assert key == TemplateKey("null", "regular", "until")


def test_classify_scoped_child():
    key = classify_template(parse_requirement(UC5_R_14_2))
    assert key.short_form() == "in,regular,until"


def test_classify_bare_always():
    key = classify_template(parse_requirement("Controller shall always (p)"))
    assert key == TemplateKey("null", "null", "always")


@pytest.mark.parametrize(
    "text",
    [
        "m if (c) Controller shall always (r)",  # (in, regular, always)
        "m Controller shall (r)",  # (in, null, eventually)
        "m if (c) Controller shall (r)",  # (in, regular, eventually)
        "Controller shall (r)",  # (null, null, eventually)
        "Controller shall until (s) (r)",  # (null, null, until)
        "if (c) Controller shall always (r)",  # (null, regular, always)
    ],
)
def test_unsupported_combinations(text):
    with pytest.raises(UnsupportedTemplate):
        classify_template(parse_requirement(text))


def test_template_key_rejects_unsupported_construction():
    with pytest.raises(UnsupportedTemplate):
        TemplateKey("in", "null", "always")


def test_always_formulas_are_forced():
    ast = parse_requirement("Controller shall always (p)")
    assert formalize_ft(ast) == fl.Globally(fl.Atom(Var("p")))
    assert formalize_pt(ast) == fl.Historically(fl.Atom(Var("p")))


def test_formula_time_direction_tags():
    for text in (UC5_R_1, UC5_R_1_1, UC5_R_14_2, "Controller shall always (p)"):
        ast = parse_requirement(text)
        assert fl.is_future_time(formalize_ft(ast))
        assert fl.is_past_time(formalize_pt(ast))


# -- three-way agreement -------------------------------------------------------

TEMPLATE_SAMPLES = [
    "Controller shall always (p)",
    "Controller shall always (p => q)",
    "if (p) Controller shall (q)",
    "when (p & q) Controller shall (!p)",
    "if (p) Controller shall until (q) (p)",
    "when (p) if (q) Controller shall until (p & q) (q)",
    "p when (q) Controller shall until (!p) (q)",
    "p when (q) Controller shall until (!p) (!q)",
]


def all_bool_traces(names, max_len):
    rows = list(itertools.product((False, True), repeat=len(names)))
    for length in range(1, max_len + 1):
        for combo in itertools.product(rows, repeat=length):
            yield Trace(tuple(names), combo)


@pytest.mark.parametrize("text", TEMPLATE_SAMPLES)
def test_three_way_agreement_exhaustive(text):
    ast = parse_requirement(text)
    ft = formalize_ft(ast)
    pt = formalize_pt(ast)
    for t in all_bool_traces(("p", "q"), 4):
        direct = eval_template_direct(ast, t)
        assert eval_formula(ft, t, 0) == direct, (text, t.states)
        assert eval_formula(pt, t, len(t) - 1) == direct, (text, t.states)


SCOPED_THREE_VAR_SAMPLES = [
    # With a third boolean the stop condition can fire inside mode
    # intervals, exercising interval ends, in-interval stops, and
    # re-triggering across mode gaps.
    "m when (p) Controller shall until (q) (p | q)",
    "m if (p) Controller shall until (q) (!q)",
    "m when (p) if (q) Controller shall until (!p) (q)",
    "m when (p | q) Controller shall until (p & q) (p)",
]


@pytest.mark.parametrize("text", SCOPED_THREE_VAR_SAMPLES)
def test_three_way_agreement_scoped_three_booleans(text):
    ast = parse_requirement(text)
    ft = formalize_ft(ast)
    pt = formalize_pt(ast)
    for t in all_bool_traces(("m", "p", "q"), 4):
        direct = eval_template_direct(ast, t)
        assert eval_formula(ft, t, 0) == direct, t.states
        assert eval_formula(pt, t, len(t) - 1) == direct, t.states


def test_vacuity_under_false_trigger():
    ast = parse_requirement("if (p) Controller shall until (q) (p & q)")
    for t in all_bool_traces(("q",), 3):
        full = Trace(("p", "q"), tuple((False, q[0]) for q in t.states))
        assert eval_template_direct(ast, full) is True
        assert eval_formula(formalize_ft(ast), full, 0) is True


# -- diagrams -------------------------------------------------------------------


def test_diagram_scoped_until():
    model = render_diagram(parse_requirement(UC5_R_14_2))
    assert model == DiagramModel(
        mode_label="surgeStallPrevention",
        trigger_label=(
            "diff(setNL, observedNL) < NLmax & (!pilotInput => !surgeStallAvoidance)"
        ),
        stop_label="diff(setNL, observedNL) > NLmin",
        obligation="continuous-until-stop",
        response_label="changeMode(nominal)",
    )


def test_diagram_always():
    model = render_diagram(parse_requirement("Controller shall always (p)"))
    assert model.mode_label is None
    assert model.trigger_label == "none"
    assert model.stop_label == "none"
    assert model.obligation == "continuous-always"


def test_diagram_parent_eventual():
    model = render_diagram(parse_requirement(UC5_R_1))
    assert model.mode_label is None
    assert model.stop_label == "none"
    assert model.obligation == "eventual"


def test_ascii_rendering_carries_labels():
    text = diagram_ascii(render_diagram(parse_requirement(UC5_R_14_2)))
    assert "M:surgeStallPrevention" in text
    assert "TC: diff(setNL, observedNL) < NLmax" in text
    assert "SC: diff(setNL, observedNL) > NLmin" in text


def test_svg_rendering_carries_labels_and_escapes():
    svg = diagram_svg(render_diagram(parse_requirement(UC5_R_14_2)))
    assert svg.startswith("<svg")
    assert "M: surgeStallPrevention" in svg
    assert "TC: diff(setNL, observedNL) &lt; NLmax &amp;" in svg
    assert "SC:" in svg
