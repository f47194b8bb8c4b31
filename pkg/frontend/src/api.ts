/**
 * Typed client for the requirements service. Every verdict, formula and
 * diagram shown in the UI comes verbatim from these endpoints; the client
 * performs no semantics of its own.
 */

export interface ParseErrorPayload {
  offset: number;
  expected: string;
  found: string;
}

export interface ParseResult {
  ok: boolean;
  ast?: unknown;
  canonical?: string;
  error?: ParseErrorPayload;
}

export interface FormalizeResult {
  ok: boolean;
  template?: string;
  formula?: string;
  error?: string;
}

export interface DiagramModel {
  mode: string | null;
  trigger: string;
  stop: string;
  obligation: string;
  response: string;
}

export interface DiagramResult {
  ok: boolean;
  model?: DiagramModel;
  svg?: string;
  ascii?: string;
  error?: string;
}

export interface RequirementDoc {
  id: string;
  parents: string[];
  text: string;
  rationale: string;
  comments: string;
  revision: number;
}

export interface MappingDoc {
  parent: string;
  children: string[];
  definitions: { abstract: string; concrete: string }[];
  note: string;
}

export interface ProjectDoc {
  name: string;
  requirements: RequirementDoc[];
  mappings: MappingDoc[];
  glossary: unknown[];
  scenarios: unknown[];
}

export interface SaveResult {
  status: "ok" | "conflict";
  revision?: number;
  current?: number;
}

export interface TraceDoc {
  variables: string[];
  states: unknown[][];
}

export interface RefinementResult {
  verdict: "refines" | "counterexample" | "inconclusive";
  bound: number;
  traces?: number;
  note?: string;
  reason?: string;
  trace?: TraceDoc;
}

export class ApiClient {
  constructor(
    readonly base: string,
    private onNetworkError: (message: string) => void = () => {},
  ) {}

  private async request(
    method: string,
    path: string,
    body?: unknown,
    headers?: Record<string, string>,
  ): Promise<{ status: number; doc: any }> {
    let response: Response;
    try {
      response = await fetch(`${this.base}${path}`, {
        method,
        headers: { "Content-Type": "application/json", ...(headers ?? {}) },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (exc) {
      this.onNetworkError(String(exc));
      throw exc;
    }
    return { status: response.status, doc: await response.json() };
  }

  async project(): Promise<ProjectDoc> {
    const { doc } = await this.request("GET", "/project");
    return doc as ProjectDoc;
  }

  async parse(text: string): Promise<ParseResult> {
    const { status, doc } = await this.request("POST", "/parse", { text });
    if (status === 200) {
      return { ok: true, ast: doc.ast, canonical: doc.canonical };
    }
    return { ok: false, error: doc.error };
  }

  async formalize(text: string, form: "ft" | "pt"): Promise<FormalizeResult> {
    const { status, doc } = await this.request("POST", "/formalize", { text, form });
    if (status === 200) {
      return { ok: true, template: doc.template, formula: doc.formula };
    }
    return { ok: false, error: typeof doc.error === "string" ? doc.error : "parse error" };
  }

  async diagram(text: string): Promise<DiagramResult> {
    const { status, doc } = await this.request("POST", "/diagram", { text });
    if (status === 200) {
      return { ok: true, model: doc.model, svg: doc.svg, ascii: doc.ascii };
    }
    return { ok: false, error: typeof doc.error === "string" ? doc.error : "parse error" };
  }

  async saveRequirement(
    id: string,
    body: { text: string; rationale: string; comments: string; parents: string[] },
    revision?: number,
  ): Promise<SaveResult> {
    const headers = revision === undefined ? undefined : { "If-Match": String(revision) };
    const { status, doc } = await this.request(
      "PUT",
      `/requirements/${encodeURIComponent(id)}`,
      body,
      headers,
    );
    if (status === 200) {
      return { status: "ok", revision: doc.revision };
    }
    if (status === 409) {
      return { status: "conflict", current: doc.current };
    }
    throw new Error(`save failed with status ${status}`);
  }

  async checkRefinement(mapping: MappingDoc, bound: number): Promise<RefinementResult> {
    const { status, doc } = await this.request("POST", "/check-refinement", {
      mapping,
      bound,
    });
    if (status !== 200) {
      throw new Error(typeof doc.error === "string" ? doc.error : `status ${status}`);
    }
    return doc as RefinementResult;
  }
}
