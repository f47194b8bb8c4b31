import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fretc.model import (
    And,
    BoolLit,
    Call,
    Eq,
    Gt,
    Implies,
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
from fretc.parser import (
    ParseError,
    ast_from_tree,
    export_parse_tree,
    parse_expr,
    parse_requirement,
    pretty_print,
    print_expr,
)

UC5_R_1 = "if ((sensorfaults) & (trackingPilotCommands)) Controller shall (controlObjectives)"
UC5_R_14_2 = (
    "surgeStallPrevention when (diff(setNL, observedNL) < NLmax)"
    " if (!pilotInput => !surgeStallAvoidance) Controller shall"
    " until (diff(setNL, observedNL) > NLmin) (changeMode(nominal))"
)


def test_parse_parent_requirement():
    ast = parse_requirement(UC5_R_1)
    assert ast.scope_mode is None
    assert ast.when_cond is None
    assert ast.if_cond == And(Var("sensorfaults"), Var("trackingPilotCommands"))
    assert ast.component == "Controller"
    assert ast.timing == Timing("eventually")
    assert ast.response == Var("controlObjectives")


def test_parse_scoped_until_requirement():
    ast = parse_requirement(UC5_R_14_2)
    assert ast.scope_mode == "surgeStallPrevention"
    diff = Call("diff", (Var("setNL"), Var("observedNL")))
    assert ast.when_cond == Lt(diff, Var("NLmax"))
    assert ast.if_cond == Implies(Not(Var("pilotInput")), Not(Var("surgeStallAvoidance")))
    assert ast.timing == Timing("until", Gt(diff, Var("NLmin")))
    assert ast.response == Call("changeMode", (Var("nominal"),))


def test_parse_minimal_always():
    ast = parse_requirement("Controller shall always (p)")
    assert ast.scope_mode is None
    assert ast.when_cond is None and ast.if_cond is None
    assert ast.timing == Timing("always")
    assert ast.response == Var("p")


def test_parse_degenerate_input():
    with pytest.raises(ParseError) as exc:
        parse_requirement("shall shall shall")
    assert exc.value.offset == 0


def test_scope_detected_before_bare_component():
    ast = parse_requirement("nominal Controller shall always (p)")
    assert ast.scope_mode == "nominal"
    assert ast.component == "Controller"


def test_satisfy_keyword_is_optional():
    a = parse_requirement("Controller shall satisfy (p & q)")
    b = parse_requirement("Controller shall (p & q)")
    assert a == b


def test_trailing_garbage_rejected():
    with pytest.raises(ParseError):
        parse_requirement("Controller shall (p) trailing")


def test_error_offset_is_local():
    text = "Controller shall (p &)"
    with pytest.raises(ParseError) as exc:
        parse_requirement(text)
    assert exc.value.offset == text.index("&)") + 1
    assert exc.value.offset <= len(text)


# -- expression precedence ---------------------------------------------------


def test_and_binds_tighter_than_or():
    assert parse_expr("a | b & c") == Or(Var("a"), And(Var("b"), Var("c")))


def test_implies_is_right_associative():
    e = parse_expr("a => b => c")
    assert e == Implies(Var("a"), Implies(Var("b"), Var("c")))


def test_subtraction_is_left_associative():
    e = parse_expr("a - b - c")
    assert e == Sub(Sub(Var("a"), Var("b")), Var("c"))


def test_comparisons_do_not_chain():
    with pytest.raises(ParseError):
        parse_expr("a < b < c")


def test_tight_not_on_identifier_joins_comparison():
    # !p applies to the identifier, then participates in the comparison.
    assert parse_expr("!p < q") == Lt(Not(Var("p")), Var("q"))


def test_not_before_implication():
    e = parse_expr("!pilotInput => !surgeStallAvoidance")
    assert e == Implies(Not(Var("pilotInput")), Not(Var("surgeStallAvoidance")))


def test_loose_not_wraps_literal_comparison():
    assert parse_expr("!true") == Not(BoolLit(True))


def test_null_equality():
    e = parse_expr("sensorValue(S) = null")
    assert e == Eq(Call("sensorValue", (Var("S"),)), NullLit())


def test_arith_in_comparison():
    e = parse_expr("sensorValue(S) > nominalValue + R")
    assert e == Gt(Call("sensorValue", (Var("S"),)), (parse_expr("nominalValue + R")))


def test_unary_minus():
    assert parse_expr("-5") == Neg(NumLit("5"))


# -- canonical printing ------------------------------------------------------


def test_pretty_print_parent_exact_text():
    ast = parse_requirement(UC5_R_1)
    assert pretty_print(ast) == (
        "if (sensorfaults & trackingPilotCommands) Controller shall (controlObjectives)"
    )


def test_pretty_print_always_exact_text():
    ast = parse_requirement("Controller shall always (p)")
    assert pretty_print(ast) == "Controller shall always (p)"


@pytest.mark.parametrize(
    "text",
    [
        UC5_R_1,
        UC5_R_14_2,
        "Controller shall always (p)",
        "when (a > 1 + 2) if ((x = null) | !y) Comp shall until (b) (c & (d => e))",
        "m if (q) Comp shall until (!q) (!p | q)",
    ],
)
def test_pretty_print_round_trip(text):
    ast = parse_requirement(text)
    assert parse_requirement(pretty_print(ast)) == ast


def test_print_expr_minimal_parens():
    e = parse_expr("diff(setNL, observedNL) < NLmax & (!pilotInput => !surgeStallAvoidance)")
    assert print_expr(e) == (
        "diff(setNL, observedNL) < NLmax & (!pilotInput => !surgeStallAvoidance)"
    )


def test_print_preserves_structure_not_text():
    # Structure chooses the parenthesisation, not the input's extra parens.
    e = parse_expr("((a) & ((b | c)))")
    assert print_expr(e) == "a & (b | c)"


# -- parse-tree export -------------------------------------------------------


def test_export_minimal_requirement():
    ast = parse_requirement("Controller shall always (p)")
    doc = export_parse_tree(ast)
    assert doc["kind"] == "requirement"
    assert doc["scope"] is None
    assert doc["component"] == "Controller"
    assert doc["timing"] == {"kind": "always"}
    assert doc["response"] == {"kind": "var", "name": "p"}
    assert list(doc) == ["kind", "scope", "when", "if", "component", "timing", "response"]


def test_export_condition_subtree():
    doc = export_parse_tree(parse_requirement(UC5_R_1))
    cond = doc["if"]
    assert cond["kind"] == "and"
    assert cond["lhs"] == {"kind": "var", "name": "sensorfaults"}
    assert cond["rhs"] == {"kind": "var", "name": "trackingPilotCommands"}


@pytest.mark.parametrize("text", [UC5_R_1, UC5_R_14_2, "Controller shall always (p)"])
def test_export_reconstructs(text):
    ast = parse_requirement(text)
    assert ast_from_tree(export_parse_tree(ast)) == ast


# -- totality / properties ---------------------------------------------------


@settings(max_examples=300)
@given(st.text(max_size=80))
def test_parser_total_on_arbitrary_text(text):
    try:
        parse_requirement(text)
    except ParseError as exc:
        assert 0 <= exc.offset <= len(text) + 1


_names = st.sampled_from(["a", "b", "p", "q", "x2", "setNL", "V1"])
_leaves = st.one_of(
    st.booleans().map(BoolLit),
    st.just(NullLit()),
    st.sampled_from(["0", "1", "2.5", "10"]).map(NumLit),
    _names.map(Var),
)


def _exprs():
    def extend(children):
        unary = st.one_of(children.map(Not), children.map(Neg))
        calls = st.builds(
            Call, _names, st.lists(children, min_size=1, max_size=2).map(tuple)
        )
        binops = st.sampled_from([And, Or, Implies, Lt, Gt, Eq, Ne, Sub])
        binary = st.builds(lambda op, a, b: op(a, b), binops, children, children)
        return st.one_of(unary, calls, binary)

    return st.recursive(_leaves, extend, max_leaves=12)


@settings(max_examples=300)
@given(_exprs())
def test_expr_print_parse_round_trip(e):
    assert parse_expr(print_expr(e)) == e


@settings(max_examples=300)
@given(_exprs())
def test_expr_tree_export_lossless(e):
    import json

    from fretc.parser import expr_from_tree, expr_to_tree

    doc = json.loads(json.dumps(expr_to_tree(e)))
    assert expr_from_tree(doc) == e
