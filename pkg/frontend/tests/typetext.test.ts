// Pure rendering helpers over structured wire types.

import { describe, expect, it } from "vitest";

import type { RenderContext } from "../src/typetext.js";
import {
  qualifiedInstance,
  qualifiedType,
  renderPredicate,
} from "../src/typetext.js";
import type { StructuredType } from "../src/types.js";
import { bevyDocument } from "./helpers.js";

function ctx(expansions: string[] = []): RenderContext {
  return {
    symbols: bevyDocument().symbols,
    expansions: new Set(expansions),
    nodeId: 0,
  };
}

function sym(path: string): number {
  const symbols = bevyDocument().symbols;
  const id = Object.keys(symbols).find((k) => symbols[k].path === path);
  if (id === undefined) throw new Error(path);
  return Number(id);
}

describe("qualifiedType", () => {
  it("prints full paths and all arguments", () => {
    const t: StructuredType = {
      t: "ctor",
      head: sym("bevy::ResMut"),
      name: "ResMut",
      args: [{ t: "ctor", head: sym("Timer"), name: "Timer", args: [] }],
    };
    expect(qualifiedType(t, ctx())).toBe("bevy::ResMut<Timer>");
  });

  it("uncurries function types by surface arity", () => {
    const t: StructuredType = {
      t: "fn",
      param: { t: "unit" },
      result: { t: "fn", param: { t: "unit" }, result: { t: "unit" }, arity: null },
      arity: 2,
    };
    expect(qualifiedType(t, ctx())).toBe("fn(unit, unit) -> unit");
  });

  it("flattens tuples and prints regions on refs", () => {
    const t: StructuredType = {
      t: "tuple",
      left: { t: "ref", region: "a", mutable: true, inner: { t: "unit" } },
      right: {
        t: "tuple",
        left: { t: "infer", index: 3 },
        right: { t: "var", name: "T" },
      },
    };
    expect(qualifiedType(t, ctx())).toBe("(&'a mut unit, ?3, T)");
  });

  it("prints dyn bounds", () => {
    const inst = {
      trait: sym("bevy::System"),
      name: "System",
      args: [],
      regions: [],
    };
    expect(qualifiedType({ t: "dyn", bounds: [inst] }, ctx())).toBe(
      "dyn bevy::System",
    );
    expect(qualifiedInstance(inst, ctx())).toBe("bevy::System");
  });
});

describe("renderPredicate", () => {
  const bound = () => ({
    p: "trait_bound" as const,
    self: {
      t: "ctor" as const,
      head: sym("bevy::ResMut"),
      name: "ResMut",
      args: [
        { t: "ctor" as const, head: sym("Timer"), name: "Timer", args: [] },
      ],
    },
    instance: {
      trait: sym("bevy::SystemParam"),
      name: "SystemParam",
      args: [],
      regions: [],
    },
  });

  it("renders shortened text with a collapsed argument list", () => {
    const el = renderPredicate(bound(), ctx());
    expect(el.textContent).toBe("ResMut<..>: SystemParami");
    expect(el.querySelector(".ellipsis")!.textContent).toBe("<..>");
    expect(el.querySelector(".impls-btn")).toBeTruthy();
  });

  it("renders the qualified argument list at expanded positions", () => {
    const el = renderPredicate(bound(), ctx(["self.args"]));
    expect(el.querySelector(".ellipsis.expanded")!.textContent).toBe("<Timer>");
  });

  it("tags symbols for minibuffer lookup", () => {
    const el = renderPredicate(bound(), ctx());
    const tags = [...el.querySelectorAll(".sym")].map(
      (s) => (s as HTMLElement).dataset.symbol,
    );
    expect(tags).toContain(String(sym("bevy::ResMut")));
    expect(tags).toContain(String(sym("bevy::SystemParam")));
  });
});
