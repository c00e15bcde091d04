// HTTP client: the UI's only source of semantic content.

import type {
  GoalSummaryJson,
  ImplListJson,
  SourceJson,
  TreeDocument,
} from "./types.js";

export interface Api {
  goals(): Promise<GoalSummaryJson[]>;
  tree(goal: string): Promise<TreeDocument>;
  impls(traitPath: string): Promise<ImplListJson>;
  source(file: string, line: number): Promise<SourceJson>;
  /** Subscribe to re-solve notifications; returns an unsubscribe handle. */
  events(onDocument: () => void): () => void;
}

async function getJson<T>(url: string): Promise<T> {
  const reply = await fetch(url);
  if (!reply.ok) {
    throw new Error(`${url}: ${reply.status} ${reply.statusText}`);
  }
  return (await reply.json()) as T;
}

export function realApi(base = ""): Api {
  return {
    goals: () => getJson(`${base}/api/goals`),
    tree: (goal) => getJson(`${base}/api/tree?goal=${encodeURIComponent(goal)}`),
    impls: (traitPath) =>
      getJson(`${base}/api/impls?trait=${encodeURIComponent(traitPath)}`),
    source: (file, line) =>
      getJson(
        `${base}/api/source?file=${encodeURIComponent(file)}&line=${line}`,
      ),
    events: (onDocument) => {
      const stream = new EventSource(`${base}/api/events`);
      stream.addEventListener("document", onDocument);
      return () => stream.close();
    },
  };
}
