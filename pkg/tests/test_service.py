import json
import threading
import urllib.error
import urllib.request

import pytest

from fretc.corpus import builtin_corpus
from fretc.service import make_server
from fretc.store import save_project

UC5_R_14_2 = (
    "surgeStallPrevention when (diff(setNL, observedNL) < NLmax)"
    " if (!pilotInput => !surgeStallAvoidance) Controller shall"
    " until (diff(setNL, observedNL) > NLmin) (changeMode(nominal))"
)


@pytest.fixture()
def service(tmp_path):
    path = tmp_path / "corpus.json"
    save_project(builtin_corpus(), path)
    server = make_server(str(path), port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        yield base
    finally:
        server.shutdown()
        server.server_close()


def request(base, method, path, body=None, headers=None):
    data = None if body is None else json.dumps(body).encode("utf-8")
    req = urllib.request.Request(f"{base}{path}", data=data, method=method)
    req.add_header("Content-Type", "application/json")
    for k, v in (headers or {}).items():
        req.add_header(k, v)
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read().decode("utf-8"))
    except urllib.error.HTTPError as exc:
        return exc.code, json.loads(exc.read().decode("utf-8"))


def test_get_project(service):
    status, doc = request(service, "GET", "/project")
    assert status == 200
    assert len(doc["requirements"]) == 42
    assert all("revision" in r for r in doc["requirements"])


def test_parse_ok(service):
    status, doc = request(service, "POST", "/parse", {
        "text": "if ((sensorfaults) & (trackingPilotCommands)) Controller shall"
                " (controlObjectives)",
    })
    assert status == 200
    assert doc["ast"]["kind"] == "requirement"
    assert doc["ast"]["if"]["kind"] == "and"


def test_parse_error_is_422_with_offset(service):
    status, doc = request(service, "POST", "/parse", {"text": "shall"})
    assert status == 422
    assert doc["error"]["offset"] == 0


def test_formalize_reports_template(service):
    status, doc = request(service, "POST", "/formalize",
                          {"text": UC5_R_14_2, "form": "ft"})
    assert status == 200
    assert doc["template"] == "in,regular,until"
    assert doc["formula"].startswith("(G ")


def test_diagram_carries_labels(service):
    status, doc = request(service, "POST", "/diagram", {"text": UC5_R_14_2})
    assert status == 200
    assert doc["model"]["mode"] == "surgeStallPrevention"
    assert "M: surgeStallPrevention" in doc["svg"]
    assert "TC" in doc["svg"] and "SC" in doc["svg"]


def test_put_then_get_round_trips_rationale(service):
    body = {
        "text": "Controller shall always (p)",
        "rationale": "why we need it",
        "comments": "",
        "parents": [],
    }
    status, doc = request(service, "PUT", "/requirements/UC9_R_1", body)
    assert status == 200
    revision = doc["revision"]
    status, project = request(service, "GET", "/project")
    record = next(r for r in project["requirements"] if r["id"] == "UC9_R_1")
    assert record["rationale"] == "why we need it"
    assert record["revision"] == revision


def test_stale_revision_is_409(service):
    body = {"text": "Controller shall always (p)", "parents": []}
    status, doc = request(service, "PUT", "/requirements/UC9_R_2", body)
    current = doc["revision"]
    status, doc = request(service, "PUT", "/requirements/UC9_R_2", body,
                          headers={"If-Match": str(current)})
    assert status == 200
    fresh = doc["revision"]
    assert fresh > current
    status, doc = request(service, "PUT", "/requirements/UC9_R_2", body,
                          headers={"If-Match": str(current)})
    assert status == 409
    assert doc["current"] == fresh


def test_reads_between_writes_are_stable(service):
    first = request(service, "GET", "/project")
    second = request(service, "GET", "/project")
    assert first == second


def test_delete(service):
    request(service, "PUT", "/requirements/UC9_R_3",
            {"text": "Controller shall always (p)", "parents": []})
    status, _ = request(service, "DELETE", "/requirements/UC9_R_3")
    assert status == 200
    status, _ = request(service, "DELETE", "/requirements/UC9_R_3")
    assert status == 404


def test_check_trace_endpoint(service):
    t = {
        "variables": ["trackingPilotCommands", "changeMode(nominal)",
                      "changeMode(surgeStallPrevention)"],
        "states": [[True, True, False]],
    }
    status, doc = request(service, "POST", "/check-trace",
                          {"id": "UC5_R_13", "trace": t})
    assert status == 200
    assert doc["verdict"] == "SAT"
    t["states"] = [[True, False, False]]
    status, doc = request(service, "POST", "/check-trace",
                          {"id": "UC5_R_13", "trace": t})
    assert doc["verdict"] == "UNSAT"


def test_check_trace_unknown_id_is_404(service):
    status, _ = request(service, "POST", "/check-trace",
                        {"id": "UC5_R_99", "trace": {"variables": [], "states": [[]]}})
    assert status == 404


def test_check_refinement_endpoint(service):
    mapping = {
        "parent": "UC5_R_13",
        "children": ["UC5_R_13.1", "UC5_R_13.2"],
        "definitions": [{"abstract": "trackingPilotCommands", "concrete": "pilotInput"}],
        "note": "",
    }
    status, doc = request(service, "POST", "/check-refinement",
                          {"mapping": mapping, "bound": 2})
    assert status == 200
    assert doc["verdict"] == "counterexample"
    assert "trace" in doc


def test_lint_endpoint(service):
    status, doc = request(service, "GET", "/lint")
    assert status == 200
    assert [f for f in doc["findings"] if f["severity"] == "error"] == []


def test_malformed_body_is_400(service):
    req = urllib.request.Request(
        f"{service}/parse", data=b"{not json", method="POST",
        headers={"Content-Type": "application/json"},
    )
    try:
        with urllib.request.urlopen(req) as resp:
            status = resp.status
    except urllib.error.HTTPError as exc:
        status = exc.code
    assert status == 400
