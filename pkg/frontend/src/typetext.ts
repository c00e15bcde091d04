// Interactive rendering of structured predicates and types.
//
// Types render shortened by default: symbol names only, with every
// non-empty generic argument list elided to a clickable "<..>" that
// expands in place to the fully-qualified argument list for exactly
// that position.

import type {
  InstanceJson,
  ProjectionJson,
  StructuredPredicate,
  StructuredType,
  SymbolJson,
} from "./types.js";

export interface RenderContext {
  symbols: Record<string, SymbolJson>;
  /** positions (dotted paths) whose ellipsis is currently expanded */
  expansions: Set<string>;
  /** id of the node whose predicate is being rendered, for event routing */
  nodeId: number;
}

function pathOf(ctx: RenderContext, symbolId: number): string {
  const entry = ctx.symbols[String(symbolId)];
  return entry ? entry.path : `#${symbolId}`;
}

// -- fully-qualified plain text (used inside expanded ellipses)

export function qualifiedType(
  t: StructuredType,
  ctx: RenderContext,
): string {
  switch (t.t) {
    case "unit":
      return "unit";
    case "var":
      return t.name;
    case "infer":
      return `?${t.index}`;
    case "ref":
      return `&'${t.region} ${t.mutable ? "mut " : ""}${qualifiedType(t.inner, ctx)}`;
    case "ctor": {
      const args = t.args.map((a) => qualifiedType(a, ctx)).join(", ");
      return pathOf(ctx, t.head) + (t.args.length ? `<${args}>` : "");
    }
    case "tuple": {
      const items = flattenTuple(t);
      return `(${items.map((i) => qualifiedType(i, ctx)).join(", ")})`;
    }
    case "fn": {
      const { params, result } = uncurry(t);
      const inner = params.map((p) => qualifiedType(p, ctx)).join(", ");
      return `fn(${inner}) -> ${qualifiedType(result, ctx)}`;
    }
    case "projection": {
      const inst = qualifiedInstance(t.instance, ctx);
      const args = t.args.length
        ? `<${t.args.map((a) => qualifiedType(a, ctx)).join(", ")}>`
        : "";
      return `<${qualifiedType(t.self, ctx)} as ${inst}>::${t.assoc_name}${args}`;
    }
    case "dyn":
      return "dyn " + t.bounds.map((b) => qualifiedInstance(b, ctx)).join(" + ");
  }
}

export function qualifiedInstance(
  inst: InstanceJson,
  ctx: RenderContext,
): string {
  const parts = inst.args.map((a) => qualifiedType(a, ctx));
  for (const r of inst.regions) parts.push(`'${r}`);
  return pathOf(ctx, inst.trait) + (parts.length ? `<${parts.join(", ")}>` : "");
}

function flattenTuple(t: StructuredType): StructuredType[] {
  const items: StructuredType[] = [];
  let cursor: StructuredType = t;
  while (cursor.t === "tuple") {
    items.push(cursor.left);
    cursor = cursor.right;
  }
  items.push(cursor);
  return items;
}

function uncurry(t: Extract<StructuredType, { t: "fn" }>): {
  params: StructuredType[];
  result: StructuredType;
} {
  const arity = t.arity ?? 1;
  if (arity === 0) return { params: [], result: t.result };
  const params: StructuredType[] = [];
  let cursor: StructuredType = t;
  for (let i = 0; i < arity && cursor.t === "fn"; i++) {
    params.push(cursor.param);
    cursor = cursor.result;
  }
  return { params, result: cursor };
}

// -- interactive shortened rendering

function span(cls: string, text?: string): HTMLSpanElement {
  const el = document.createElement("span");
  el.className = cls;
  if (text !== undefined) el.textContent = text;
  return el;
}

function symbolSpan(ctx: RenderContext, symbolId: number, name: string) {
  const el = span("sym", name);
  el.dataset.symbol = String(symbolId);
  return el;
}

/** A "<..>" toggle, or the expanded qualified argument list. */
function argList(
  ctx: RenderContext,
  pos: string,
  parts: string[],
): HTMLElement | null {
  if (!parts.length) return null;
  const el = span(
    ctx.expansions.has(pos) ? "ellipsis expanded" : "ellipsis",
    ctx.expansions.has(pos) ? `<${parts.join(", ")}>` : "<..>",
  );
  el.dataset.pos = pos;
  el.dataset.node = String(ctx.nodeId);
  el.title = ctx.expansions.has(pos) ? "collapse" : "expand";
  return el;
}

export function renderType(
  t: StructuredType,
  ctx: RenderContext,
  pos: string,
): DocumentFragment {
  const out = document.createDocumentFragment();
  switch (t.t) {
    case "unit":
      out.append(span("kw", "unit"));
      break;
    case "var":
      out.append(span("tyvar", t.name));
      break;
    case "infer":
      out.append(span("infer", `?${t.index}`));
      break;
    case "ref":
      out.append(span("kw", t.mutable ? "&mut " : "&"));
      out.append(renderType(t.inner, ctx, `${pos}.ref`));
      break;
    case "ctor": {
      out.append(symbolSpan(ctx, t.head, t.name));
      const args = argList(
        ctx,
        `${pos}.args`,
        t.args.map((a) => qualifiedType(a, ctx)),
      );
      if (args) out.append(args);
      break;
    }
    case "tuple": {
      const items = flattenTuple(t);
      out.append(span("punct", "("));
      items.forEach((item, i) => {
        if (i) out.append(span("punct", ", "));
        out.append(renderType(item, ctx, `${pos}.${i}`));
      });
      out.append(span("punct", ")"));
      break;
    }
    case "fn": {
      const { params, result } = uncurry(t);
      out.append(span("kw", "fn("));
      params.forEach((p, i) => {
        if (i) out.append(span("punct", ", "));
        out.append(renderType(p, ctx, `${pos}.p${i}`));
      });
      out.append(span("punct", ") -> "));
      out.append(renderType(result, ctx, `${pos}.r`));
      break;
    }
    case "projection": {
      out.append(renderType(t.self, ctx, `${pos}.self`));
      out.append(span("punct", "."));
      out.append(symbolSpan(ctx, t.assoc, t.assoc_name));
      const args = argList(
        ctx,
        `${pos}.args`,
        t.args.map((a) => qualifiedType(a, ctx)),
      );
      if (args) out.append(args);
      break;
    }
    case "dyn": {
      out.append(span("kw", "dyn "));
      t.bounds.forEach((b, i) => {
        if (i) out.append(span("punct", " + "));
        out.append(renderInstance(b, ctx, `${pos}.b${i}`));
      });
      break;
    }
  }
  return out;
}

export function renderInstance(
  inst: InstanceJson,
  ctx: RenderContext,
  pos: string,
): DocumentFragment {
  const out = document.createDocumentFragment();
  const sym = symbolSpan(ctx, inst.trait, inst.name);
  sym.classList.add("trait");
  out.append(sym);
  const parts = inst.args.map((a) => qualifiedType(a, ctx));
  for (const r of inst.regions) parts.push(`'${r}`);
  const args = argList(ctx, `${pos}.args`, parts);
  if (args) out.append(args);
  const btn = document.createElement("button");
  btn.className = "impls-btn";
  btn.dataset.trait = pathOf(ctx, inst.trait);
  btn.textContent = "i";
  btn.title = "implementations of this trait";
  out.append(btn);
  return out;
}

export function renderPredicate(
  pred: StructuredPredicate,
  ctx: RenderContext,
): HTMLElement {
  const el = span("pred");
  switch (pred.p) {
    case "trait_bound":
      el.append(renderType(pred.self, ctx, "self"));
      el.append(span("punct", ": "));
      el.append(renderInstance(pred.instance, ctx, "inst"));
      break;
    case "outlives":
      el.append(renderType(pred.self, ctx, "self"));
      el.append(span("punct", `: '${pred.region}`));
      break;
    case "projection_eq":
      el.append(renderType(pred.projection, ctx, "proj"));
      el.append(span("punct", " == "));
      el.append(renderType(pred.rhs, ctx, "rhs"));
      break;
  }
  return el;
}
