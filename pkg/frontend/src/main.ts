/** Wire the editor and hierarchy views to the service and the page. */

import { ApiClient } from "./api.js";
import { EditorView, EditorElements } from "./editor.js";
import { HierarchyView, HierarchyElements } from "./hierarchy.js";

function byId<T extends HTMLElement>(doc: Document, id: string): T {
  const el = doc.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

export interface App {
  api: ApiClient;
  editor: EditorView;
  hierarchy: HierarchyView;
  banner: HTMLElement;
}

export async function bootstrap(doc: Document, baseUrl: string): Promise<App> {
  const banner = byId<HTMLElement>(doc, "network-banner");
  const api = new ApiClient(baseUrl, (message) => {
    banner.textContent = `service unreachable: ${message}`;
    banner.hidden = false;
  });

  const editorElements: EditorElements = {
    textarea: byId(doc, "req-text"),
    status: byId(doc, "parse-status"),
    badge: byId(doc, "template-badge"),
    ftFormula: byId(doc, "ft-formula"),
    ptFormula: byId(doc, "pt-formula"),
    diagram: byId(doc, "diagram"),
    rationale: byId(doc, "req-rationale"),
    saveButton: byId(doc, "save-button"),
    unsavedIndicator: byId(doc, "unsaved-indicator"),
    reloadPrompt: byId(doc, "reload-prompt"),
    reloadButton: byId(doc, "reload-button"),
  };
  const hierarchyElements: HierarchyElements = {
    tree: byId(doc, "tree"),
    mappingSelect: byId(doc, "mapping-select"),
    boundInput: byId(doc, "bound-input"),
    runButton: byId(doc, "run-check"),
    verdict: byId(doc, "verdict"),
    counterexample: byId(doc, "counterexample"),
  };

  const editor = new EditorView(api, editorElements);
  const hierarchy = new HierarchyView(api, hierarchyElements, (record) =>
    editor.load(record),
  );
  hierarchy.render(await api.project());
  return { api, editor, hierarchy, banner };
}

declare global {
  interface Window {
    app?: App;
  }
}
