/**
 * End-to-end: spawn the Python service on the built-in corpus and drive the
 * real editor DOM against it. Requires the `fretc` package to be installed
 * (pip install -e ..).
 */

import { spawn, execFileSync, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { bootstrap, App } from "../src/main.js";

const here = dirname(fileURLToPath(import.meta.url));

const UC5_R_14_2_TEXT =
  "surgeStallPrevention when (diff(setNL, observedNL) < NLmax)" +
  " if (!pilotInput => !surgeStallAvoidance) Controller shall" +
  " until (diff(setNL, observedNL) > NLmin) (changeMode(nominal))";

let proc: ChildProcess;
let base: string;
let app: App;

async function waitForService(url: string): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${url}/project`);
      if (response.ok) {
        await response.json();
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error(`service at ${url} never came up`);
}

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), "fretc-e2e-"));
  execFileSync("python3", ["-m", "fretc", "corpus", "init", dir]);
  proc = spawn("python3", ["-m", "fretc", "serve", join(dir, "corpus.json"), "--port", "0"]);
  base = await new Promise<string>((resolve, reject) => {
    let buffer = "";
    proc.stdout!.on("data", (chunk: Buffer) => {
      buffer += chunk.toString();
      const match = buffer.match(/on (http:\/\/[\d.]+:\d+)/);
      if (match) {
        resolve(match[1]);
      }
    });
    proc.on("exit", (code) => reject(new Error(`service exited early (${code})`)));
    setTimeout(() => reject(new Error("no service banner within 20s")), 20000);
  });
  await waitForService(base);

  // Mount the real page markup (minus scripts) and boot the app against it.
  const html = readFileSync(join(here, "..", "index.html"), "utf8");
  const body = html.replace(/^[\s\S]*<body>/, "").replace(/<script[\s\S]*$/, "");
  document.body.innerHTML = body;
  app = await bootstrap(document, base);
});

afterAll(() => {
  proc?.kill();
});

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

describe("editor against the live service", () => {
  it("loads the corpus hierarchy: 14 roots, three children under UC5_R_1", () => {
    const tree = el("tree");
    const roots = [...tree.children].filter((c) => c.matches("details"));
    expect(roots.length).toBe(14);
    const children = tree.querySelectorAll("[data-id='UC5_R_1'] details");
    expect(children.length).toBe(3);
  });

  it("typing the scoped mode-switch text shows its badge and M/TC/SC diagram", async () => {
    const textarea = el<HTMLTextAreaElement>("req-text");
    textarea.value = UC5_R_14_2_TEXT;
    textarea.dispatchEvent(new Event("input"));
    // Ride the real debounce (300 ms) plus the service round-trips.
    await new Promise((resolve) => setTimeout(resolve, 400));
    for (let i = 0; i < 50 && el("template-badge").textContent === ""; i++) {
      await new Promise((resolve) => setTimeout(resolve, 100));
    }
    expect(el("template-badge").textContent).toBe("in, regular, until");
    const svg = el("diagram").innerHTML;
    expect(svg).toContain("M: surgeStallPrevention");
    expect(svg).toContain(">TC<");
    expect(svg).toContain(">SC<");
    expect(el("ft-formula").textContent).toContain("(G ");
    expect(el("pt-formula").textContent).toMatch(/\(!\s*\(O/);
  });

  it("shows an inline caret for a parse error at the service-reported offset", async () => {
    const textarea = el<HTMLTextAreaElement>("req-text");
    textarea.value = "if ((sensorfaults & (trackingPilotCommands)) Controller shall (x)";
    await app.editor.refreshNow();
    const status = el("parse-status").textContent ?? "";
    expect(status).toContain("^");
    expect(status).toContain("expected");
  });

  it("surfaces the 409 reload prompt on a stale-revision save", async () => {
    const project = await app.api.project();
    const record = project.requirements.find((r) => r.id === "UC5_R_14.2")!;
    app.editor.load(record);

    // Another editor saves first: the revision moves on.
    const other = await app.api.saveRequirement(
      record.id,
      {
        text: record.text,
        rationale: "updated elsewhere",
        comments: record.comments,
        parents: record.parents,
      },
      record.revision,
    );
    expect(other.status).toBe("ok");

    const textarea = el<HTMLTextAreaElement>("req-text");
    textarea.value = record.text + " ";
    textarea.dispatchEvent(new Event("input"));
    await app.editor.save();
    expect(el("reload-prompt").hidden).toBe(false);
    // The unsaved text is never lost by the conflict.
    expect(textarea.value).toBe(record.text + " ");

    // Reloading adopts the remote revision and clears the prompt.
    await app.editor.reload();
    expect(el("reload-prompt").hidden).toBe(true);
    expect(el<HTMLTextAreaElement>("req-rationale").value).toBe("updated elsewhere");
  });

  it("runs a refinement check and renders the counterexample step table", async () => {
    el<HTMLSelectElement>("mapping-select").value = "1"; // the mode-switch study
    el<HTMLInputElement>("bound-input").value = "2";
    await app.hierarchy.runCheck();
    expect(el("verdict").textContent).toContain("Counterexample");
    const rows = document.querySelectorAll("#counterexample tbody tr");
    expect(rows.length).toBeGreaterThan(0);
  });

  it("every shown verdict comes from the service, not local logic", async () => {
    // The displayed formula string is byte-identical to the service reply.
    const response = await fetch(`${base}/formalize`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text: UC5_R_14_2_TEXT, form: "ft" }),
    });
    const doc = await response.json();
    const textarea = el<HTMLTextAreaElement>("req-text");
    textarea.value = UC5_R_14_2_TEXT;
    await app.editor.refreshNow();
    expect(el("ft-formula").textContent).toBe(doc.formula);
  });
});
