import { beforeEach, describe, expect, it } from "vitest";

import { ProjectDoc, RefinementResult, RequirementDoc } from "../src/api.js";
import {
  HierarchyApi,
  HierarchyElements,
  HierarchyView,
  traceTable,
  verdictText,
} from "../src/hierarchy.js";

function req(id: string, parents: string[] = []): RequirementDoc {
  return { id, parents, text: "C shall always (p)", rationale: `why ${id}`,
           comments: "", revision: 1 };
}

function project(): ProjectDoc {
  return {
    name: "p",
    requirements: [
      req("UC5_R_1"),
      req("UC5_R_2"),
      req("UC5_R_1.1", ["UC5_R_1"]),
      req("UC5_R_1.2", ["UC5_R_1"]),
      req("UC5_R_1.3", ["UC5_R_1"]),
    ],
    mappings: [
      { parent: "UC5_R_1", children: ["UC5_R_1.1"], definitions: [], note: "" },
    ],
    glossary: [],
    scenarios: [],
  };
}

function elements(): HierarchyElements {
  return {
    tree: document.createElement("div"),
    mappingSelect: document.createElement("select"),
    boundInput: document.createElement("input"),
    runButton: document.createElement("button"),
    verdict: document.createElement("p"),
    counterexample: document.createElement("div"),
  };
}

class FakeApi implements HierarchyApi {
  result: RefinementResult = { verdict: "refines", bound: 3, traces: 10, note: "ok" };

  async checkRefinement(): Promise<RefinementResult> {
    return this.result;
  }
}

describe("HierarchyView", () => {
  let el: HierarchyElements;
  let api: FakeApi;
  let selected: string[];
  let view: HierarchyView;

  beforeEach(() => {
    el = elements();
    api = new FakeApi();
    selected = [];
    view = new HierarchyView(api, el, (r) => selected.push(r.id));
    view.render(project());
  });

  it("renders parents as roots and children inside them", () => {
    const roots = [...el.tree.children].filter((c) => c.matches("details"));
    expect(roots.map((r) => (r as HTMLElement).dataset.id)).toEqual([
      "UC5_R_1",
      "UC5_R_2",
    ]);
    const children = el.tree.querySelectorAll("[data-id='UC5_R_1'] details");
    expect([...children].map((c) => (c as HTMLElement).dataset.id)).toEqual([
      "UC5_R_1.1",
      "UC5_R_1.2",
      "UC5_R_1.3",
    ]);
  });

  it("shows rationale text in the panel", () => {
    expect(el.tree.textContent).toContain("why UC5_R_1");
  });

  it("selecting a node notifies the editor", () => {
    const link = el.tree.querySelector("[data-id='UC5_R_1.2'] a") as HTMLElement;
    link.click();
    expect(selected).toEqual(["UC5_R_1.2"]);
  });

  it("renders a refines verdict", async () => {
    await view.runCheck();
    expect(el.verdict.textContent).toContain("Refines");
    expect(el.counterexample.querySelector("table")).toBeNull();
  });

  it("renders a counterexample as a step table", async () => {
    api.result = {
      verdict: "counterexample",
      bound: 3,
      trace: {
        variables: ["p", "q"],
        states: [[true, false], [false, { num: "2.5" }]],
      },
    };
    await view.runCheck();
    expect(el.verdict.textContent).toContain("Counterexample");
    const rows = el.counterexample.querySelectorAll("tbody tr");
    expect(rows.length).toBe(2);
    expect(rows[1].textContent).toContain("2.5");
  });

  it("renders inconclusive verdicts with the budget explanation", () => {
    const text = verdictText({
      verdict: "inconclusive",
      bound: 4,
      reason: "length 4 needs 9999999 traces, over the budget of 5000000",
    });
    expect(text).toContain("budget of 5000000");
  });

  it("trace tables print every value kind", () => {
    const table = traceTable(document, {
      variables: ["a"],
      states: [[null], [{ enum: "high" }], [true]],
    });
    const cells = [...table.querySelectorAll("tbody tr td:nth-child(2)")];
    expect(cells.map((c) => c.textContent)).toEqual(["null", "high", "true"]);
  });
});
