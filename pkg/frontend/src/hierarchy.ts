/**
 * Parent/child tree with rationale panels and the refinement-check
 * launcher. Verdicts and counterexample traces render exactly as the
 * service reports them; a counterexample becomes a step table with one row
 * per trace state.
 */

import { MappingDoc, ProjectDoc, RefinementResult, RequirementDoc, TraceDoc } from "./api.js";

/** The slice of the service client the hierarchy view consumes. */
export interface HierarchyApi {
  checkRefinement(mapping: MappingDoc, bound: number): Promise<RefinementResult>;
}

export interface HierarchyElements {
  tree: HTMLElement;
  mappingSelect: HTMLSelectElement;
  boundInput: HTMLInputElement;
  runButton: HTMLButtonElement;
  verdict: HTMLElement;
  counterexample: HTMLElement;
}

function valueText(v: unknown): string {
  if (v === null) return "null";
  if (typeof v === "boolean") return v ? "true" : "false";
  if (typeof v === "object") {
    const o = v as Record<string, unknown>;
    if ("num" in o) return String(o.num);
    if ("enum" in o) return String(o.enum);
  }
  return String(v);
}

export function traceTable(doc: Document, trace: TraceDoc): HTMLTableElement {
  const table = doc.createElement("table");
  table.className = "trace";
  const head = table.createTHead().insertRow();
  head.insertCell().textContent = "step";
  for (const name of trace.variables) {
    head.insertCell().textContent = name;
  }
  const body = table.createTBody();
  trace.states.forEach((state, i) => {
    const row = body.insertRow();
    row.insertCell().textContent = String(i);
    for (const value of state) {
      row.insertCell().textContent = valueText(value);
    }
  });
  return table;
}

export function verdictText(result: RefinementResult): string {
  if (result.verdict === "refines") {
    return `Refines (${result.note ?? `up to bound ${result.bound}`})`;
  }
  if (result.verdict === "counterexample") {
    return "Counterexample found";
  }
  return `Inconclusive: ${result.reason ?? result.note ?? "budget exceeded"}`;
}

export class HierarchyView {
  selected: string | null = null;

  constructor(
    private api: HierarchyApi,
    private el: HierarchyElements,
    private onSelect: (record: RequirementDoc) => void,
  ) {
    el.runButton.addEventListener("click", () => void this.runCheck());
  }

  render(project: ProjectDoc): void {
    const doc = this.el.tree.ownerDocument;
    this.el.tree.innerHTML = "";
    const byParent = new Map<string, RequirementDoc[]>();
    const roots: RequirementDoc[] = [];
    for (const r of project.requirements) {
      if (r.parents.length === 0) {
        roots.push(r);
      }
      for (const p of r.parents) {
        const bucket = byParent.get(p) ?? [];
        bucket.push(r);
        byParent.set(p, bucket);
      }
    }
    for (const root of roots) {
      this.el.tree.appendChild(this.renderNode(doc, root, byParent));
    }

    this.el.mappingSelect.innerHTML = "";
    project.mappings.forEach((m, i) => {
      const option = doc.createElement("option");
      option.value = String(i);
      option.textContent = `${m.parent} vs {${m.children.join(", ")}}`;
      this.el.mappingSelect.appendChild(option);
    });
    this.mappings = project.mappings;
  }

  private mappings: ProjectDoc["mappings"] = [];

  private renderNode(
    doc: Document,
    record: RequirementDoc,
    byParent: Map<string, RequirementDoc[]>,
  ): HTMLElement {
    const children = byParent.get(record.id) ?? [];
    const details = doc.createElement("details");
    details.className = "req-node";
    details.dataset.id = record.id;
    const summary = doc.createElement("summary");
    const label = doc.createElement("a");
    label.href = "#";
    label.textContent = record.id;
    label.addEventListener("click", (event) => {
      event.preventDefault();
      this.selected = record.id;
      this.onSelect(record);
    });
    summary.appendChild(label);
    details.appendChild(summary);
    if (record.rationale) {
      const rationale = doc.createElement("p");
      rationale.className = "rationale";
      rationale.textContent = record.rationale;
      details.appendChild(rationale);
    }
    for (const child of children) {
      details.appendChild(this.renderNode(doc, child, byParent));
    }
    return details;
  }

  async runCheck(): Promise<void> {
    const index = Number(this.el.mappingSelect.value || "0");
    const mapping = this.mappings[index];
    if (mapping === undefined) {
      return;
    }
    const bound = Math.max(1, Number(this.el.boundInput.value || "3"));
    this.el.verdict.textContent = "checking...";
    this.el.counterexample.innerHTML = "";
    try {
      const result = await this.api.checkRefinement(mapping, bound);
      this.el.verdict.textContent = verdictText(result);
      if (result.trace !== undefined) {
        this.el.counterexample.appendChild(
          traceTable(this.el.counterexample.ownerDocument, result.trace),
        );
      }
    } catch (exc) {
      this.el.verdict.textContent = `check failed: ${exc}`;
    }
  }
}
