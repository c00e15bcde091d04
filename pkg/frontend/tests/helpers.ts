// Fake API backed by captured wire-format payloads from the service.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { Api } from "../src/api.js";
import type {
  GoalSummaryJson,
  ImplListJson,
  SourceJson,
  TreeDocument,
} from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

function load<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export function bevyDocument(): TreeDocument {
  return load<TreeDocument>("bevy.tree.json");
}

export function astDocument(): TreeDocument {
  return load<TreeDocument>("ast.tree.json");
}

export function dieselDocument(): TreeDocument {
  return load<TreeDocument>("diesel.tree.json");
}

export function helloDocument(): TreeDocument {
  return load<TreeDocument>("hello.tree.json");
}

export class FakeApi implements Api {
  documentListeners: Array<() => void> = [];
  failTree = false;
  treeDoc: TreeDocument;

  constructor(doc?: TreeDocument) {
    this.treeDoc = doc ?? bevyDocument();
  }

  async goals(): Promise<GoalSummaryJson[]> {
    return this.treeDoc.goals.map((g) => ({ label: g.label, result: g.result }));
  }

  async tree(goal: string): Promise<TreeDocument> {
    if (this.failTree) throw new Error("tree fetch failed");
    if (!this.treeDoc.goals.some((g) => g.label === goal)) {
      throw new Error(`unknown goal ${goal}`);
    }
    return this.treeDoc;
  }

  async impls(traitPath: string): Promise<ImplListJson> {
    if (traitPath === "bevy::SystemParam") {
      return load<ImplListJson>("bevy.impls.SystemParam.json");
    }
    return { trait: traitPath, impls: [] };
  }

  async source(file: string, line: number): Promise<SourceJson> {
    const reply = load<SourceJson>("bevy.source.json");
    return { ...reply, file, line };
  }

  events(onDocument: () => void): () => void {
    this.documentListeners.push(onDocument);
    return () => {
      this.documentListeners = this.documentListeners.filter(
        (l) => l !== onDocument,
      );
    };
  }

  fireDocumentEvent(): void {
    for (const listener of this.documentListeners) listener();
  }
}

export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
}

/** Row text without control buttons or nested rows. */
export function rowText(el: Element): string {
  const clone = el.cloneNode(true) as HTMLElement;
  clone.querySelectorAll("button").forEach((b) => b.remove());
  clone
    .querySelectorAll(".children, .ancestors, .subtree")
    .forEach((c) => c.remove());
  return (clone.textContent ?? "").replace(/\s+/g, " ").trim();
}
