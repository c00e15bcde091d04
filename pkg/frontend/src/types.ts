// Wire-format types for TreeDocument v1 and the JSON API.

export interface SpanJson {
  file: string;
  line_start: number;
  line_end: number;
}

export interface SymbolJson {
  path: string;
  provenance: "local" | "external";
  span: SpanJson;
}

export interface InstanceJson {
  trait: number;
  name: string;
  args: StructuredType[];
  regions: string[];
}

export interface ProjectionJson {
  t: "projection";
  self: StructuredType;
  assoc: number;
  assoc_name: string;
  instance: InstanceJson;
  args: StructuredType[];
}

export type StructuredType =
  | { t: "unit" }
  | { t: "var"; name: string }
  | { t: "infer"; index: number }
  | { t: "ref"; region: string; mutable: boolean; inner: StructuredType }
  | { t: "ctor"; head: number; name: string; args: StructuredType[] }
  | { t: "tuple"; left: StructuredType; right: StructuredType }
  | { t: "fn"; param: StructuredType; result: StructuredType; arity: number | null }
  | { t: "dyn"; bounds: InstanceJson[] }
  | ProjectionJson;

export type StructuredPredicate =
  | { p: "trait_bound"; self: StructuredType; instance: InstanceJson }
  | { p: "outlives"; self: StructuredType; region: string }
  | { p: "projection_eq"; projection: ProjectionJson; rhs: StructuredType };

export interface PredicateJson {
  short: string;
  qualified: string;
  structured: StructuredPredicate;
}

export interface ReasonJson {
  kind: "ambiguous" | "overflow" | "no_candidates";
  infer_vars?: number[];
  cycle_path?: number[];
}

export interface ImplRefJson {
  id: number | string;
  head_short: string;
  span: SpanJson | null;
}

export interface NodeJson {
  kind: "goal" | "candidate";
  result: "yes" | "no" | "maybe";
  reason: ReasonJson | null;
  predicate?: PredicateJson;
  impl?: ImplRefJson;
  children: number[];
  depth: number;
  parent: number | null;
}

export interface BottomUpEntryJson {
  leaf: number;
  ancestor_chain: number[];
}

export interface ViewsJson {
  bottom_up: { heuristic: string; entries: BottomUpEntryJson[] };
  top_down: { root: number; visible_filter: string };
}

export interface GoalDocJson {
  label: string;
  root: number;
  result: string;
  nodes: Record<string, NodeJson>;
}

export interface TreeDocument {
  schema_version: string;
  symbols: Record<string, SymbolJson>;
  goals: GoalDocJson[];
  rankings: Record<string, Record<string, number[]>>;
  views: Record<string, ViewsJson>;
}

export interface GoalSummaryJson {
  label: string;
  result: string;
}

export interface ImplHeadJson {
  id: number;
  head_short: string;
  head_qualified: string;
  span: SpanJson;
  trait: string;
}

export interface ImplListJson {
  trait: string;
  impls: ImplHeadJson[];
}

export interface SourceJson {
  file: string;
  line: number;
  text: string;
}
