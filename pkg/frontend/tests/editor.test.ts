import { beforeEach, describe, expect, it, vi } from "vitest";

import {
  DiagramResult,
  FormalizeResult,
  ParseResult,
  ProjectDoc,
  RequirementDoc,
  SaveResult,
} from "../src/api.js";
import { debounce, LIVE_PARSE_DEBOUNCE_MS } from "../src/debounce.js";
import { badgeText, errorCaret, EditorApi, EditorElements, EditorView } from "../src/editor.js";

function elements(): EditorElements {
  const make = <T extends HTMLElement>(tag: string): T =>
    document.createElement(tag) as T;
  return {
    textarea: make<HTMLTextAreaElement>("textarea"),
    status: make("pre"),
    badge: make("span"),
    ftFormula: make("pre"),
    ptFormula: make("pre"),
    diagram: make("div"),
    rationale: make<HTMLTextAreaElement>("textarea"),
    saveButton: make<HTMLButtonElement>("button"),
    unsavedIndicator: make("span"),
    reloadPrompt: make("span"),
    reloadButton: make<HTMLButtonElement>("button"),
  };
}

const record: RequirementDoc = {
  id: "UC5_R_14.2",
  parents: ["UC5_R_14"],
  text: "Controller shall always (p)",
  rationale: "because",
  comments: "",
  revision: 3,
};

class FakeApi implements EditorApi {
  parseResult: ParseResult = { ok: true, canonical: "x" };
  template = "in,regular,until";
  saveResult: SaveResult = { status: "ok", revision: 4 };
  saveCalls: { id: string; revision?: number; text: string }[] = [];
  projectDoc: ProjectDoc = {
    name: "p",
    requirements: [{ ...record, text: "fresh text", revision: 9 }],
    mappings: [],
    glossary: [],
    scenarios: [],
  };

  async parse(): Promise<ParseResult> {
    return this.parseResult;
  }

  async formalize(_text: string, form: "ft" | "pt"): Promise<FormalizeResult> {
    return { ok: true, template: this.template, formula: `(${form})` };
  }

  async diagram(): Promise<DiagramResult> {
    return {
      ok: true,
      model: { mode: "m", trigger: "t", stop: "s", obligation: "o", response: "r" },
      svg: "<svg><text>M: m</text><text>TC</text><text>SC</text></svg>",
      ascii: "",
    };
  }

  async saveRequirement(
    id: string,
    body: { text: string; rationale: string; comments: string; parents: string[] },
    revision?: number,
  ): Promise<SaveResult> {
    this.saveCalls.push({ id, revision, text: body.text });
    return this.saveResult;
  }

  async project(): Promise<ProjectDoc> {
    return this.projectDoc;
  }
}

describe("debounce", () => {
  it("fires once, trailing edge, after the configured delay", () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const fn = debounce((n: number) => calls.push(n), LIVE_PARSE_DEBOUNCE_MS);
    fn(1);
    fn(2);
    vi.advanceTimersByTime(LIVE_PARSE_DEBOUNCE_MS - 1);
    expect(calls).toEqual([]);
    fn(3);
    vi.advanceTimersByTime(LIVE_PARSE_DEBOUNCE_MS);
    expect(calls).toEqual([3]);
    vi.useRealTimers();
  });
});

describe("presentation helpers", () => {
  it("renders the template badge with spaces", () => {
    expect(badgeText("in,regular,until")).toBe("in, regular, until");
  });

  it("points the caret at the error offset", () => {
    expect(errorCaret("ab cd", 3)).toBe("ab cd\n   ^");
  });
});

describe("EditorView", () => {
  let api: FakeApi;
  let el: EditorElements;
  let view: EditorView;

  beforeEach(() => {
    api = new FakeApi();
    el = elements();
    view = new EditorView(api, el);
  });

  it("shows a hint for an empty editor", async () => {
    await view.refreshNow();
    expect(el.status.textContent).toContain("Type a requirement");
    expect(el.badge.textContent).toBe("");
  });

  it("renders badge, formulas and diagram after a successful parse", async () => {
    el.textarea.value = "whatever";
    await view.refreshNow();
    expect(el.badge.textContent).toBe("in, regular, until");
    expect(el.ftFormula.textContent).toBe("(ft)");
    expect(el.ptFormula.textContent).toBe("(pt)");
    expect(el.diagram.innerHTML).toContain("M: m");
  });

  it("places the error caret at the reported offset", async () => {
    api.parseResult = {
      ok: false,
      error: { offset: 6, expected: "a component", found: "'shall'" },
    };
    el.textarea.value = "scope shall";
    await view.refreshNow();
    const lines = (el.status.textContent ?? "").split("\n");
    expect(lines[1]).toBe("      ^");
    expect(lines[2]).toContain("expected a component");
    expect(el.badge.textContent).toBe("");
  });

  it("tracks unsaved edits against the last saved revision", () => {
    view.load(record);
    expect(el.unsavedIndicator.hidden).toBe(true);
    el.textarea.value = "Controller shall always (q)";
    el.textarea.dispatchEvent(new Event("input"));
    expect(el.unsavedIndicator.hidden).toBe(false);
    el.textarea.value = record.text;
    el.textarea.dispatchEvent(new Event("input"));
    expect(el.unsavedIndicator.hidden).toBe(true);
  });

  it("sends the loaded revision on save and adopts the fresh one", async () => {
    view.load(record);
    el.textarea.value = "Controller shall always (q)";
    await view.save();
    expect(api.saveCalls).toEqual([
      { id: "UC5_R_14.2", revision: 3, text: "Controller shall always (q)" },
    ]);
    expect(view.current?.revision).toBe(4);
    expect(el.unsavedIndicator.hidden).toBe(true);
  });

  it("keeps unsaved text and prompts reload on a stale revision", async () => {
    api.saveResult = { status: "conflict", current: 12 };
    view.load(record);
    el.textarea.value = "Controller shall always (edited)";
    await view.save();
    expect(el.reloadPrompt.hidden).toBe(false);
    expect(el.textarea.value).toBe("Controller shall always (edited)");
    expect(view.current?.revision).toBe(3);
  });

  it("reload adopts the remote version after a conflict", async () => {
    view.load(record);
    await view.reload();
    expect(el.textarea.value).toBe("fresh text");
    expect(view.current?.revision).toBe(9);
    expect(el.reloadPrompt.hidden).toBe(true);
  });
});
