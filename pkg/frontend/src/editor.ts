/**
 * Live requirement editor: as the user types, the view debounces, asks the
 * service to parse/formalize/diagram the text, and renders an inline error
 * caret, the template badge, both formulas and the M/TC/SC timeline. Saving
 * sends the stored revision; a stale revision surfaces a reload prompt and
 * never discards the unsaved text.
 */

import {
  DiagramResult,
  FormalizeResult,
  ParseResult,
  ProjectDoc,
  RequirementDoc,
  SaveResult,
} from "./api.js";
import { debounce, LIVE_PARSE_DEBOUNCE_MS } from "./debounce.js";

/** The slice of the service client the editor consumes (stubbed in tests). */
export interface EditorApi {
  parse(text: string): Promise<ParseResult>;
  formalize(text: string, form: "ft" | "pt"): Promise<FormalizeResult>;
  diagram(text: string): Promise<DiagramResult>;
  saveRequirement(
    id: string,
    body: { text: string; rationale: string; comments: string; parents: string[] },
    revision?: number,
  ): Promise<SaveResult>;
  project(): Promise<ProjectDoc>;
}

export interface EditorElements {
  textarea: HTMLTextAreaElement;
  status: HTMLElement; // parse status / inline error with caret
  badge: HTMLElement; // template key badge
  ftFormula: HTMLElement;
  ptFormula: HTMLElement;
  diagram: HTMLElement; // receives the SVG timeline
  rationale: HTMLTextAreaElement;
  saveButton: HTMLButtonElement;
  unsavedIndicator: HTMLElement;
  reloadPrompt: HTMLElement; // hidden until a stale-revision save
  reloadButton: HTMLButtonElement;
}

/** Render a two-line snippet pointing at the failure offset. */
export function errorCaret(text: string, offset: number): string {
  const flat = text.replace(/\n/g, " ");
  return `${flat}\n${" ".repeat(Math.max(0, offset))}^`;
}

/** Badge form of a template key: "in,regular,until" -> "in, regular, until". */
export function badgeText(template: string): string {
  return template.split(",").join(", ");
}

export class EditorView {
  current: RequirementDoc | null = null;
  private lastSavedText = "";
  private refreshSeq = 0;
  readonly refresh: () => void;

  constructor(
    private api: EditorApi,
    private el: EditorElements,
    private onSaved: (record: RequirementDoc) => void = () => {},
  ) {
    this.refresh = debounce(() => void this.refreshNow(), LIVE_PARSE_DEBOUNCE_MS);
    el.textarea.addEventListener("input", () => {
      this.updateUnsavedIndicator();
      this.refresh();
    });
    el.saveButton.addEventListener("click", () => void this.save());
    el.reloadButton.addEventListener("click", () => void this.reload());
  }

  load(record: RequirementDoc): void {
    this.current = { ...record };
    this.lastSavedText = record.text;
    this.el.textarea.value = record.text;
    this.el.rationale.value = record.rationale;
    this.el.reloadPrompt.hidden = true;
    this.updateUnsavedIndicator();
    void this.refreshNow();
  }

  updateUnsavedIndicator(): void {
    const dirty =
      this.current !== null && this.el.textarea.value !== this.lastSavedText;
    this.el.unsavedIndicator.hidden = !dirty;
  }

  /** Immediate (undebounced) refresh; exposed for tests. */
  async refreshNow(): Promise<void> {
    const seq = ++this.refreshSeq;
    const text = this.el.textarea.value;
    if (!text.trim()) {
      this.el.status.textContent = "Type a requirement to see its semantics.";
      this.el.badge.textContent = "";
      this.el.ftFormula.textContent = "";
      this.el.ptFormula.textContent = "";
      this.el.diagram.innerHTML = "";
      return;
    }
    const parsed = await this.api.parse(text);
    if (seq !== this.refreshSeq) {
      return; // a newer keystroke superseded this round-trip
    }
    if (!parsed.ok) {
      const err = parsed.error!;
      this.el.status.textContent =
        `${errorCaret(text, err.offset)}\nexpected ${err.expected}, found ${err.found}`;
      this.el.badge.textContent = "";
      this.el.ftFormula.textContent = "";
      this.el.ptFormula.textContent = "";
      this.el.diagram.innerHTML = "";
      return;
    }
    this.el.status.textContent = "ok";
    const [ft, pt, diagram] = await Promise.all([
      this.api.formalize(text, "ft"),
      this.api.formalize(text, "pt"),
      this.api.diagram(text),
    ]);
    if (seq !== this.refreshSeq) {
      return;
    }
    this.el.badge.textContent = ft.ok ? badgeText(ft.template!) : (ft.error ?? "");
    this.el.ftFormula.textContent = ft.ok ? ft.formula! : "";
    this.el.ptFormula.textContent = pt.ok ? pt.formula! : "";
    this.el.diagram.innerHTML = diagram.ok ? diagram.svg! : "";
  }

  async save(): Promise<void> {
    if (this.current === null) {
      return;
    }
    const body = {
      text: this.el.textarea.value,
      rationale: this.el.rationale.value,
      comments: this.current.comments,
      parents: this.current.parents,
    };
    const result = await this.api.saveRequirement(
      this.current.id,
      body,
      this.current.revision,
    );
    if (result.status === "conflict") {
      // Someone else saved first: keep the unsaved text, offer a reload.
      this.el.reloadPrompt.hidden = false;
      return;
    }
    this.current = { ...this.current, ...body, revision: result.revision! };
    this.lastSavedText = body.text;
    this.el.reloadPrompt.hidden = true;
    this.updateUnsavedIndicator();
    this.onSaved(this.current);
  }

  /** Accept the remote version after a conflict. */
  async reload(): Promise<void> {
    if (this.current === null) {
      return;
    }
    const project = await this.api.project();
    const fresh = project.requirements.find((r) => r.id === this.current!.id);
    if (fresh !== undefined) {
      this.load(fresh);
    }
  }
}
