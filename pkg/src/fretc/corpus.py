"""Built-in aircraft-engine-controller requirements corpus.

Ships the complete FADEC requirement set: 14 parent requirements, 28 child
requirements, 20 abstract test-case scenarios, a glossary typing every
symbol, and sample abstraction mappings for the two refinement studies.

Child texts are normalised where the published tables carry typographical
slips (unbalanced parentheses, a split identifier); every normalisation is
recorded in the requirement's comments field.

Bounded-checking domains: booleans are {false, true}; real-valued signals
get small exact-number abstractions (a 3-point {nominal, deviating,
unavailable} domain for sensor readings, a 2-point thrust domain) while
scenario constants are pinned to single representative values so that the
tracking transient is active. This keeps exhaustive enumeration tractable
and is an abstraction, not a claim about concrete engine values.
"""

from __future__ import annotations

from fractions import Fraction

from . import parser
from .model import (
    AbstractionMapping,
    Definition,
    Glossary,
    Project,
    RequirementRecord,
    ScenarioRecord,
    VariableDecl,
)

_SENSOR_IF = (
    "if ((sensorValue(S) > nominalValue + R) | (sensorValue(S) < nominalValue - R)"
    " | (sensorValue(S) = null)"
)
_PARAM_IF = (
    "if ((systemParameter(P) > nominalValue + R) | (systemParameter(P) < nominalValue - R)"
    " | (systemParameter(P) = null)"
)
_PRESSURE_IF = (
    "if ((outsideAirPressure(T1) != outsideAirPressure(T2)) & (diff(t2,t1) < threshold)"
    " & (abs(outsideAirPressure(T1) - outsideAirPressure(T2)) > pressureThreshold)"
)
_WHEN = "when (diff(r(i),y(i)) > E)"
_UNTIL = "until (diff(r(i),y(i)) < e)"

_SETTLING = "(settlingTime >= 0) & (settlingTime <= settlingTimeMax)"
_OVERSHOOT = "(overshoot >= 0) & (overshoot <= overshootMax)"
_STEADY = "(steadyStateError >= 0) & (steadyStateError <= steadyStateErrorMax)"
_SHAFT = "(shaftSpeed >= operatingLowerBound) & (shaftSpeed <= operatingUpperBound)"

_PAREN_NOTE = (
    "Normalised: closed the unbalanced parenthesis after the pressure comparison"
    " and removed a stray space in 'outsideAirPressure (T1)'."
)

_NL = {
    1: "Under sensor faults, while tracking pilot commands, control objectives"
       " shall be satisfied (e.g., settling time, overshoot, and steady state"
       " error will be within predefined, acceptable limits)",
    2: "Under sensor faults, during regulation of nominal system operation (no"
       " change in pilot input), control objectives shall be satisfied (e.g.,"
       " settling time, overshoot, and steady state error will be within"
       " predefined, acceptable limits)",
    3: "Under sensor faults, while tracking pilot commands, operating limit"
       " objectives shall be satisfied (e.g., respecting upper limit in shaft"
       " speed)",
    4: "Under sensor faults, during regulation of nominal system operation (no"
       " change in pilot input), operating limit objectives shall be satisfied"
       " (e.g., respecting upper limit in shaft speed)",
    5: "Under mechanical fatigue conditions, while tracking pilot commands,"
       " control objectives shall be satisfied (e.g., settling time, overshoot,"
       " and steady state error will be within predefined, acceptable limits)",
    6: "Under mechanical fatigue conditions, during regulation of nominal system"
       " operation (no change in pilot input), control objectives shall be"
       " satisfied (e.g., settling time, overshoot, and steady state error will"
       " be within predefined, acceptable limits)",
    7: "Under mechanical fatigue conditions, while tracking pilot commands,"
       " operating limit objectives shall be satisfied (e.g., respecting upper"
       " limit in shaft speed)",
    8: "Under mechanical fatigue conditions, during regulation of nominal system"
       " operation (no change in pilot input), operating limit objectives shall"
       " be satisfied (e.g., respecting upper limit in shaft speed)",
    9: "Under low probability hazardous events, while tracking pilot commands,"
       " control objectives shall be satisfied (e.g., settling time, overshoot,"
       " and steady state error will be within predefined, acceptable limits)",
    10: "Under low probability hazardous events, during regulation of nominal"
        " system operation (no change in pilot input), control objectives shall"
        " be satisfied (e.g., settling time, overshoot, and steady state error"
        " will be within predefined, acceptable limits)",
    11: "Under low probability hazardous events, while tracking pilot commands,"
        " operating limit objectives shall be satisfied (e.g., respecting upper"
        " limit in shaft speed)",
    12: "Under low probability hazardous events, during regulation of nominal"
        " system operation (no change in pilot input), operating limit"
        " objectives shall be satisfied (e.g., respecting upper limit in shaft"
        " speed)",
    13: "While tracking pilot commands, controller operating mode shall"
        " appropriately switch between nominal and surge / stall prevention"
        " operating state",
    14: "During regulation of nominal system operation (no change in pilot"
        " input), controller operating mode shall appropriately switch between"
        " nominal and surge / stall prevention operating state",
}


def _parent(n: int, condition: str, response: str) -> RequirementRecord:
    return RequirementRecord(
        id=f"UC5_R_{n}",
        fretish_text=f"if ({condition}) Controller shall ({response})",
        parent_ids=(),
        rationale=_NL[n],
        comments="",
    )


def _child(
    ident: str,
    parent: str,
    text: str,
    rationale: str,
    comments: str = "",
) -> RequirementRecord:
    return RequirementRecord(
        id=ident,
        fretish_text=text,
        parent_ids=(parent,),
        rationale=rationale,
        comments=comments,
    )


def _tracking_child(
    ident: str,
    parent: str,
    if_block: str,
    pair: str,
    response_envelope: str,
    settle_to: str,
    rationale: str,
    comments: str = "",
) -> RequirementRecord:
    text = (
        f"{_WHEN} {if_block} & {pair}) Controller shall {_UNTIL}"
        f" {response_envelope} & (observedThrust = {settle_to})"
    )
    return _child(ident, parent, text, rationale, comments)


_PILOT_PAIR = "(pilotInput => setThrust = V2) & (observedThrust = V1)"
_REGULATION_PAIR = "(!pilotInput => setThrust = V1) & (observedThrust = V2)"


def _requirements() -> list[RequirementRecord]:
    reqs: list[RequirementRecord] = []
    parent_conditions = {
        1: ("(sensorfaults) & (trackingPilotCommands)", "controlObjectives"),
        2: ("(sensorfaults) & (!trackingPilotCommands)", "controlObjectives"),
        3: ("(sensorfaults) & (trackingPilotCommands)", "operatingLimitObjectives"),
        4: ("(sensorfaults) & (!trackingPilotCommands)", "operatingLimitObjectives"),
        5: ("(mechanicalFatigue) & (trackingPilotCommands)", "controlObjectives"),
        6: ("(mechanicalFatigue) & (!trackingPilotCommands)", "controlObjectives"),
        7: ("(mechanicalFatigue) & (trackingPilotCommands)", "operatingLimitObjectives"),
        8: ("(mechanicalFatigue) & (!trackingPilotCommands)", "operatingLimitObjectives"),
        9: ("(lowProbabilityHazardousEvents) & (trackingPilotCommands)", "controlObjectives"),
        10: ("(lowProbabilityHazardousEvents) & (!trackingPilotCommands)", "controlObjectives"),
        11: ("(lowProbabilityHazardousEvents) & (trackingPilotCommands)", "operatingLimitObjectives"),
        12: ("(lowProbabilityHazardousEvents) & (!trackingPilotCommands)", "operatingLimitObjectives"),
    }
    for n, (cond, resp) in parent_conditions.items():
        reqs.append(_parent(n, cond, resp))
    mode_response = "(changeMode(nominal)) | (changeMode(surgeStallPrevention))"
    reqs.append(
        RequirementRecord(
            id="UC5_R_13",
            fretish_text=f"if (trackingPilotCommands) Controller shall {mode_response}",
            rationale=_NL[13],
        )
    )
    reqs.append(
        RequirementRecord(
            id="UC5_R_14",
            fretish_text=f"if (!trackingPilotCommands) Controller shall {mode_response}",
            rationale=_NL[14],
        )
    )

    # Children of UC5_R_1 / UC5_R_2: sensor faults, control objectives.
    sensor_rat = (
        "Sensor fault window from UC5_TC_1/UC5_TC_2: the sensor deviates beyond"
        " +/- R % of nominal or is unavailable; trigger and until clauses bound"
        " the tracking transient."
    )
    for idx, envelope in ((1, _SETTLING), (2, _OVERSHOOT), (3, _STEADY)):
        reqs.append(
            _tracking_child(
                f"UC5_R_1.{idx}", "UC5_R_1", _SENSOR_IF, _PILOT_PAIR, envelope, "V2",
                sensor_rat,
            )
        )
    for idx, envelope in ((1, _SETTLING), (2, _OVERSHOOT), (3, _STEADY)):
        comments = ""
        if idx == 3:
            comments = (
                "Normalised: the published text splits the identifier as"
                " 'steadyStateError Max'; the corpus uses steadyStateErrorMax."
            )
        reqs.append(
            _tracking_child(
                f"UC5_R_2.{idx}", "UC5_R_2", _SENSOR_IF, _REGULATION_PAIR, envelope, "V1",
                "Regulation variant of the UC5_R_1 children (UC5_TC_3/UC5_TC_4):"
                " perturbations move the thrust and it must return to V1.",
                comments,
            )
        )

    reqs.append(
        _tracking_child(
            "UC5_R_3.1", "UC5_R_3", _SENSOR_IF,
            "(observedThrust = V1) & (pilotInput => setThrust = V2)",
            _SHAFT, "V2",
            "Operating-limit counterpart of UC5_R_1.x (UC5_TC_5/UC5_TC_6):"
            " shaft speed stays within its operating bounds.",
            "Normalised: the published text leaves '(pilotInput => setThrust = V2)'"
            " outside the if-parentheses; the corpus folds it into the condition.",
        )
    )
    reqs.append(
        _tracking_child(
            "UC5_R_4.1", "UC5_R_4", _SENSOR_IF, _REGULATION_PAIR, _SHAFT, "V1",
            "Operating-limit counterpart of UC5_R_2.x (UC5_TC_7/UC5_TC_8).",
        )
    )

    # Children of UC5_R_5 .. UC5_R_8: perturbed system parameter.
    param_pilot = "(observedThrust = V1) & (pilotInput => setThrust = V2)"
    param_reg = "(observedThrust = V2) & (!pilotInput => setThrust = V1)"
    param_rat = (
        "System parameter P perturbed beyond +/- R % of nominal (UC5_TC_9"
        " onwards); same tracking transient bounds as the sensor-fault children."
    )
    for idx, envelope in ((1, _SETTLING), (2, _OVERSHOOT), (3, _STEADY)):
        reqs.append(
            _tracking_child(f"UC5_R_5.{idx}", "UC5_R_5", _PARAM_IF, param_pilot,
                            envelope, "V2", param_rat)
        )
    for idx, envelope in ((1, _SETTLING), (2, _OVERSHOOT), (3, _STEADY)):
        reqs.append(
            _tracking_child(f"UC5_R_6.{idx}", "UC5_R_6", _PARAM_IF, param_reg,
                            envelope, "V1", param_rat)
        )
    reqs.append(
        _tracking_child("UC5_R_7.1", "UC5_R_7", _PARAM_IF, param_pilot, _SHAFT, "V2",
                        param_rat)
    )
    reqs.append(
        _tracking_child(
            "UC5_R_8.1", "UC5_R_8", _PARAM_IF,
            "(!pilotInput => setThrust = V1) & (observedThrust = V2)",
            _SHAFT, "V1", param_rat,
        )
    )

    # Children of UC5_R_9 .. UC5_R_12: abrupt outside-air-pressure change.
    pressure_pilot = "(observedThrust = V1) & (pilotInput => setThrust = V2)"
    pressure_reg = "(observedThrust = V2) & (!pilotInput => setThrust = V1)"
    pressure_rat = (
        "Low-probability hazard from UC5_TC_13 onwards: outside air pressure"
        " changes abruptly between readings taken at T1 and T2 less than"
        " 'threshold' apart."
    )
    for idx, envelope in ((1, _SETTLING), (2, _OVERSHOOT), (3, _STEADY)):
        reqs.append(
            _tracking_child(f"UC5_R_9.{idx}", "UC5_R_9", _PRESSURE_IF, pressure_pilot,
                            envelope, "V2", pressure_rat, _PAREN_NOTE)
        )
    for idx, envelope in ((1, _SETTLING), (2, _OVERSHOOT), (3, _STEADY)):
        reqs.append(
            _tracking_child(f"UC5_R_10.{idx}", "UC5_R_10", _PRESSURE_IF, pressure_reg,
                            envelope, "V1", pressure_rat, _PAREN_NOTE)
        )
    reqs.append(
        _tracking_child("UC5_R_11.1", "UC5_R_11", _PRESSURE_IF, pressure_pilot,
                        _SHAFT, "V2", pressure_rat, _PAREN_NOTE)
    )
    reqs.append(
        _tracking_child("UC5_R_12.1", "UC5_R_12", _PRESSURE_IF, pressure_reg,
                        _SHAFT, "V1", pressure_rat, _PAREN_NOTE)
    )

    # Children of UC5_R_13 / UC5_R_14: mode switching, scoped requirements.
    mode_rat = (
        "Mode switching from UC5_TC_17..UC5_TC_20: the spool-speed error"
        " diff(setNL, observedNL) triggers the change; the scope asserts the"
        " operating mode the controller starts in."
    )
    reqs.append(
        _child(
            "UC5_R_13.1", "UC5_R_13",
            "nominal when (diff(setNL, observedNL) > NLmax)"
            " if (pilotInput => surgeStallAvoidance) Controller shall"
            " until (diff(setNL, observedNL) < NLmin) (changeMode(surgeStallPrevention))",
            mode_rat,
        )
    )
    reqs.append(
        _child(
            "UC5_R_13.2", "UC5_R_13",
            "surgeStallPrevention when (diff(setNL, observedNL) < NLmax)"
            " if (pilotInput => !surgeStallAvoidance) Controller shall"
            " until (diff(setNL, observedNL) > NLmin) (changeMode(nominal))",
            mode_rat,
        )
    )
    reqs.append(
        _child(
            "UC5_R_14.1", "UC5_R_14",
            "nominal when (diff(setNL, observedNL) > NLmax)"
            " if (!pilotInput => surgeStallAvoidance) Controller shall"
            " until (diff(setNL, observedNL) < NLmin) (changeMode(surgeStallPrevention))",
            mode_rat,
        )
    )
    reqs.append(
        _child(
            "UC5_R_14.2", "UC5_R_14",
            "surgeStallPrevention when (diff(setNL, observedNL) < NLmax)"
            " if (!pilotInput => !surgeStallAvoidance) Controller shall"
            " until (diff(setNL, observedNL) > NLmin) (changeMode(nominal))",
            mode_rat,
        )
    )
    return reqs


def _num(text: str) -> Fraction:
    return Fraction(text)


def _glossary() -> Glossary:
    B = (False, True)

    def boolean(name, kind, desc):
        return VariableDecl(name, kind, "boolean", domain=B, description=desc)

    def real(name, kind, domain, desc):
        dom = tuple(None if v is None else _num(v) for v in domain)
        return VariableDecl(name, kind, "real", domain=dom, description=desc)

    def func(name, arity, value_type, domain, desc):
        dom = None
        if domain is not None:
            if value_type == "boolean":
                dom = B
            else:
                dom = tuple(None if v is None else _num(v) for v in domain)
        return VariableDecl(name, "function", value_type, arity=arity, domain=dom,
                            description=desc)

    entries = (
        # Abstract condition booleans from the parent requirements.
        boolean("sensorfaults", "input", "A sensor deviates too far from nominal or is unavailable."),
        boolean("trackingPilotCommands", "input", "The controller is following a pilot thrust command."),
        boolean("mechanicalFatigue", "input", "A system parameter is perturbed by mechanical fatigue."),
        boolean("lowProbabilityHazardousEvents", "input", "A low-probability hazard such as an abrupt pressure change."),
        boolean("controlObjectives", "output", "Settling time, overshoot and steady-state error within limits."),
        boolean("operatingLimitObjectives", "output", "Engine parameters within operating limits."),
        boolean("pilotInput", "input", "The pilot changed the commanded thrust."),
        boolean("surgeStallAvoidance", "input", "Surge/stall avoidance indicator signal."),
        # Operating modes.
        VariableDecl("nominal", "mode", "boolean", domain=B,
                     description="Nominal operating mode."),
        VariableDecl("surgeStallPrevention", "mode", "boolean", domain=B,
                     description="Surge / stall prevention operating mode."),
        # Observation terms (applied per argument, one trace column each).
        func("changeMode", 1, "boolean", B, "Commanded switch into the named mode."),
        func("sensorValue", 1, "real", ("1", "2", None),
             "Reading of sensor S: 1 nominal, 2 deviating, null unavailable."),
        func("systemParameter", 1, "real", ("1", "2", None),
             "Value of system parameter P: 1 nominal, 2 perturbed, null unavailable."),
        func("outsideAirPressure", 1, "real", ("0", "2"),
             "Outside air pressure sampled at the named instant."),
        func("r", 1, "real", ("2",), "Reference signal at step i (pinned: transient active)."),
        func("y", 1, "real", ("0",), "Observed signal at step i (pinned: transient active)."),
        func("diff", 2, "real", None, "Built-in absolute difference."),
        func("abs", 1, "real", None, "Built-in absolute value."),
        # State signals.
        real("setThrust", "input", ("2",), "Commanded thrust (pinned to the scenario command V2)."),
        real("observedThrust", "output", ("1", "2"), "Observed thrust: V1 before, V2 after settling."),
        real("settlingTime", "output", ("0",), "Settling time of the current transient."),
        real("overshoot", "output", ("0",), "Overshoot of the current transient."),
        real("steadyStateError", "output", ("0",), "Steady-state error of the current transient."),
        real("shaftSpeed", "output", ("0", "1", "2"), "Spool shaft speed."),
        real("setNL", "input", ("2",), "Low-pressure spool speed setpoint (pinned: error large)."),
        real("observedNL", "input", ("0",), "Observed low-pressure spool speed (pinned)."),
        # Scenario constants.
        real("nominalValue", "constant", ("1",), "Nominal sensor/parameter value."),
        real("R", "constant", ("0",), "Allowed deviation band around nominal."),
        real("E", "constant", ("1",), "Error threshold arming the tracking obligation."),
        real("e", "constant", ("1",), "Error threshold releasing the tracking obligation."),
        real("V1", "constant", ("1",), "Initial thrust value."),
        real("V2", "constant", ("2",), "Commanded thrust value."),
        real("settlingTimeMax", "constant", ("0",), "Maximum acceptable settling time."),
        real("overshootMax", "constant", ("0",), "Maximum acceptable overshoot."),
        real("steadyStateErrorMax", "constant", ("0",), "Maximum acceptable steady-state error."),
        real("operatingLowerBound", "constant", ("0",), "Lower shaft-speed operating limit."),
        real("operatingUpperBound", "constant", ("2",), "Upper shaft-speed operating limit."),
        real("threshold", "constant", ("1",), "Maximum spacing between pressure readings."),
        real("pressureThreshold", "constant", ("1",), "Pressure jump counting as abrupt."),
        real("t1", "input", ("0",), "Time of the first pressure reading."),
        real("t2", "input", ("0",), "Time of the second pressure reading."),
        real("NLmax", "constant", ("1",), "Spool-speed error arming the mode switch."),
        real("NLmin", "constant", ("1",), "Spool-speed error releasing the mode switch."),
    )
    return Glossary(entries)


_SENSORFAULTS_CONCRETE = (
    "(sensorValue(S) > nominalValue + R) | (sensorValue(S) < nominalValue - R)"
    " | (sensorValue(S) = null)"
)
_CONTROL_OBJECTIVES_CONCRETE = (
    "(settlingTime >= 0) & (settlingTime <= settlingTimeMax)"
    " & (overshoot >= 0) & (overshoot <= overshootMax)"
    " & (steadyStateError >= 0) & (steadyStateError <= steadyStateErrorMax)"
    " & (observedThrust = V2)"
)


def _definition(abstract: str, concrete_text: str) -> Definition:
    return Definition(abstract, parser.parse_expr(concrete_text), concrete_text)


def _mappings() -> tuple[AbstractionMapping, ...]:
    uc5_r_1 = AbstractionMapping(
        parent_id="UC5_R_1",
        child_ids=("UC5_R_1.1", "UC5_R_1.2", "UC5_R_1.3"),
        definitions=(
            _definition("sensorfaults", _SENSORFAULTS_CONCRETE),
            _definition("trackingPilotCommands", "pilotInput"),
            _definition("controlObjectives", _CONTROL_OBJECTIVES_CONCRETE),
        ),
        superposition_note=(
            "The (pilotInput => setThrust = V2) & (observedThrust = V1) pair, the"
            " when/until clauses, and the observedThrust update are superposition"
            " refinement. The controlObjectives definition (the conjunction of"
            " the three child response envelopes) is editor-supplied, not part"
            " of the published invariants. Bounded domains pin the scenario"
            " constants so the tracking transient is active (r(i)/y(i) apart,"
            " setThrust = V2)."
        ),
    )
    uc5_r_13 = AbstractionMapping(
        parent_id="UC5_R_13",
        child_ids=("UC5_R_13.1", "UC5_R_13.2"),
        definitions=(_definition("trackingPilotCommands", "pilotInput"),),
        superposition_note=(
            "Spool-speed trigger, mode scopes and changeMode responses are"
            " superposition refinement. Bounded checks report counterexamples:"
            " the children's scoped, conditional obligations genuinely weaken"
            " the parent's unconditional eventuality (e.g. no mode active, or"
            " surgeStallAvoidance clear while pilotInput rises)."
        ),
    )
    return (uc5_r_1, uc5_r_13)


_DEVIATES_PRE = (
    "Aircraft is in operating mode M and sensor S value deviates at most"
    " +/- R % from nominal value"
)
_UNAVAILABLE_PRE = (
    "Aircraft is in operating mode M and sensor S value is not available"
    " (sensor is out of order)"
)
_PARAM_PRE = (
    "Aircraft is in operating mode M and system parameter P deviates at most"
    " +/- R % from nominal value"
)
_MODE_PRE = "Aircraft is in operating mode M"
_PILOT_STEP = "Observed aircraft thrust is at value V1 and pilot input changes from A1 to A2"
_PERTURB_STEP = (
    "Observed aircraft thrust is at value V1 and perturbations in non-pilot"
    " input cause it to change to V2"
)
_PRESSURE_PILOT_STEP = (
    "Observed aircraft thrust is at value V1, pilot input changes from A1 to A2,"
    " and outside air pressure abruptly changes from P1 to P2"
)
_PRESSURE_PERTURB_STEP = (
    "Observed aircraft thrust is at value V1, small perturbations in non-pilot"
    " input cause it to change to V2, and outside air pressure abruptly changes"
    " from P1 to P2"
)
_SETTLES_CONTROL = (
    "Observed aircraft thrust changes and settles to value V2, respecting"
    " control objectives (settling time, overshoot, steady state error)"
)
_RETURNS_CONTROL = (
    "Observed aircraft thrust returns to value V1, respecting control"
    " objectives (settling time, overshoot, steady state error)"
)
_SETTLES_LIMIT = (
    "Observed aircraft thrust changes and settles to value V2, respecting"
    " operating limit objectives (e.g. upper limit in shaft speed)"
)
_RETURNS_LIMIT = (
    "Observed aircraft thrust returns to value V1, respecting operating limit"
    " objectives (e.g. upper limit in shaft speed)"
)


def _scenarios() -> tuple[ScenarioRecord, ...]:
    rows = [
        (1, "UC5_R_1", _DEVIATES_PRE, _PILOT_STEP, _SETTLES_CONTROL),
        (2, "UC5_R_1", _UNAVAILABLE_PRE, _PILOT_STEP, _SETTLES_CONTROL),
        (3, "UC5_R_2", _DEVIATES_PRE, _PERTURB_STEP, _RETURNS_CONTROL),
        (4, "UC5_R_2", _UNAVAILABLE_PRE, _PERTURB_STEP, _RETURNS_CONTROL),
        (5, "UC5_R_3", _DEVIATES_PRE, _PILOT_STEP, _SETTLES_LIMIT),
        (6, "UC5_R_3", _UNAVAILABLE_PRE, _PILOT_STEP, _SETTLES_LIMIT),
        (7, "UC5_R_4", _DEVIATES_PRE, _PERTURB_STEP, _RETURNS_LIMIT),
        (8, "UC5_R_4", _UNAVAILABLE_PRE, _PERTURB_STEP, _RETURNS_LIMIT),
        (9, "UC5_R_5", _PARAM_PRE, _PILOT_STEP, _SETTLES_CONTROL),
        (10, "UC5_R_6", _PARAM_PRE, _PERTURB_STEP, _RETURNS_CONTROL),
        (11, "UC5_R_7", _PARAM_PRE, _PILOT_STEP, _SETTLES_LIMIT),
        (12, "UC5_R_8", _PARAM_PRE, _PERTURB_STEP, _RETURNS_LIMIT),
        (13, "UC5_R_9", _MODE_PRE, _PRESSURE_PILOT_STEP, _SETTLES_CONTROL),
        (14, "UC5_R_10", _MODE_PRE, _PRESSURE_PERTURB_STEP, _RETURNS_CONTROL),
        (15, "UC5_R_11", _MODE_PRE, _PRESSURE_PILOT_STEP, _SETTLES_LIMIT),
        (16, "UC5_R_12", _MODE_PRE, _PRESSURE_PERTURB_STEP, _RETURNS_LIMIT),
        (17, "UC5_R_13", "Aircraft is in nominal operating mode",
         "Pilot input changes from A1 to A2, causing surge / stall avoidance"
         " indicator signal to be set",
         "Aircraft switches to surge / stall prevention operating mode"),
        (18, "UC5_R_13", "Aircraft is in surge / stall prevention operating mode",
         "Pilot input changes from A1 to A2, causing surge / stall avoidance"
         " indicator signal to be cleared",
         "Aircraft switches to nominal operating mode"),
        (19, "UC5_R_14", "Aircraft is in nominal operating mode",
         "Perturbations in non-pilot input cause surge / stall avoidance"
         " indicator signal to be set",
         "Aircraft switches to surge / stall prevention operating mode"),
        (20, "UC5_R_14", "Aircraft is in surge / stall prevention operating mode",
         "Perturbations in non-pilot input cause surge / stall avoidance"
         " indicator signal to be cleared",
         "Aircraft switches to nominal operating mode"),
    ]
    return tuple(
        ScenarioRecord(f"UC5_TC_{n}", req, pre, step, expected)
        for n, req, pre, step, expected in rows
    )


def builtin_corpus() -> Project:
    """The complete aircraft-engine-controller project, ASTs populated."""
    requirements = tuple(
        r.with_ast(parser.parse_requirement(r.fretish_text)) for r in _requirements()
    )
    return Project(
        name="aircraft-engine-controller",
        requirements=requirements,
        glossary=_glossary(),
        mappings=_mappings(),
        scenarios=_scenarios(),
    )
