"""TreeDocument v1: the canonical JSON wire format.

One document carries every solved goal tree, the symbol table, rankings
for all heuristics, and the view descriptors.  Serialization is canonical
(sorted keys, UTF-8, two-space indent, newline-terminated) so that
write -> read -> write is byte-identical.
"""

from __future__ import annotations

import json
from typing import Optional

from . import ranking as ranking_mod
from .engine import (
    Ambiguous,
    BuiltIn,
    CandidateNode,
    NoCandidates,
    Overflow,
    SolveConfig,
    Solver,
    iter_nodes,
)
from .printer import FULLY_QUALIFIED, SHORTENED, pretty_print
from .syntax import (
    Constructor,
    Context,
    Existential,
    Function,
    ImplBlock,
    InferVar,
    Outlives,
    Projection,
    ProjectionEq,
    ProjectionType,
    Ref,
    TraitBound,
    TraitInstance,
    TupleType,
    TypeVar,
    Unit,
)
from .views import FAILURES_ONLY, bottom_up, top_down

SCHEMA_VERSION = "1"


def type_json(t, context: Context):
    if isinstance(t, Unit):
        return {"t": "unit"}
    if isinstance(t, TypeVar):
        return {"t": "var", "name": t.name}
    if isinstance(t, InferVar):
        return {"t": "infer", "index": t.index}
    if isinstance(t, Ref):
        return {
            "t": "ref",
            "region": t.region.name,
            "mutable": t.mutable,
            "inner": type_json(t.inner, context),
        }
    if isinstance(t, Constructor):
        return {
            "t": "ctor",
            "head": t.head,
            "name": context.name_of(t.head),
            "args": [type_json(a, context) for a in t.args],
        }
    if isinstance(t, TupleType):
        return {
            "t": "tuple",
            "left": type_json(t.left, context),
            "right": type_json(t.right, context),
        }
    if isinstance(t, Function):
        return {
            "t": "fn",
            "param": type_json(t.param, context),
            "result": type_json(t.result, context),
            "arity": t.surface_arity,
        }
    if isinstance(t, ProjectionType):
        return projection_json(t.projection, context)
    if isinstance(t, Existential):
        bounds = []
        for b in t.bounds:
            if isinstance(b, TraitBound):
                bounds.append(instance_json(b.instance, context))
        return {"t": "dyn", "bounds": bounds}
    raise TypeError(f"cannot serialize type {t!r}")


def instance_json(inst: TraitInstance, context: Context):
    return {
        "trait": inst.trait,
        "name": context.name_of(inst.trait),
        "args": [type_json(a, context) for a in inst.type_args],
        "regions": [r.name for r in inst.region_args],
    }


def projection_json(proj: Projection, context: Context):
    return {
        "t": "projection",
        "self": type_json(proj.self_type, context),
        "assoc": proj.assoc,
        "assoc_name": context.name_of(proj.assoc),
        "instance": instance_json(proj.instance, context),
        "args": [type_json(a, context) for a in proj.type_args],
    }


def predicate_json(pred, context: Context):
    if isinstance(pred, TraitBound):
        structured = {
            "p": "trait_bound",
            "self": type_json(pred.self_type, context),
            "instance": instance_json(pred.instance, context),
        }
    elif isinstance(pred, Outlives):
        structured = {
            "p": "outlives",
            "self": type_json(pred.self_type, context),
            "region": pred.region.name,
        }
    elif isinstance(pred, ProjectionEq):
        structured = {
            "p": "projection_eq",
            "projection": projection_json(pred.projection, context),
            "rhs": type_json(pred.rhs, context),
        }
    else:
        raise TypeError(f"cannot serialize predicate {pred!r}")
    return {
        "short": pretty_print(pred, SHORTENED, context),
        "qualified": pretty_print(pred, FULLY_QUALIFIED, context),
        "structured": structured,
    }


def reason_json(reason):
    if reason is None:
        return None
    if isinstance(reason, Ambiguous):
        return {"kind": "ambiguous", "infer_vars": list(reason.infer_vars)}
    if isinstance(reason, Overflow):
        return {"kind": "overflow", "cycle_path": list(reason.cycle_path)}
    if isinstance(reason, NoCandidates):
        return {"kind": "no_candidates"}
    raise TypeError(f"cannot serialize reason {reason!r}")


def span_json(span):
    return {"file": span.file, "line_start": span.line_start, "line_end": span.line_end}


def impl_head_text(impl: ImplBlock, mode: str, context: Context) -> str:
    inst = pretty_print(impl.instance, mode, context)
    self_text = pretty_print(impl.self_type, mode, context)
    return f"impl {inst} for {self_text}"


def impl_json(impl_ref, context: Context):
    if isinstance(impl_ref, BuiltIn):
        return {
            "id": f"builtin:{impl_ref.kind}",
            "head_short": f"built-in rule ({impl_ref.kind.replace('_', ' ')})",
            "span": None,
        }
    impl = context.impl_by_id(impl_ref)
    return {
        "id": impl_ref,
        "head_short": impl_head_text(impl, SHORTENED, context),
        "span": span_json(impl.span),
    }


def node_json(node, context: Context):
    if isinstance(node, CandidateNode):
        return {
            "kind": "candidate",
            "result": node.result.value,
            "reason": reason_json(node.result.reason),
            "impl": impl_json(node.impl_ref, context),
            "children": [sub.id for sub in node.subgoals],
            "depth": node.depth,
            "parent": node.parent,
        }
    return {
        "kind": "goal",
        "result": node.result.value,
        "reason": reason_json(node.result.reason),
        "predicate": predicate_json(node.predicate, context),
        "children": [cand.id for cand in node.candidates],
        "depth": node.depth,
        "parent": node.parent,
    }


def build_document(
    context: Context,
    config: Optional[SolveConfig] = None,
    labels: Optional[list[str]] = None,
) -> dict:
    """Solve the requested goals (all by default) into a TreeDocument."""
    config = config or SolveConfig()
    wanted = [
        g for g in context.goals if labels is None or g.label in labels
    ]
    goals_out = []
    rankings_out = {}
    views_out = {}
    next_id = 0
    for goal in wanted:
        solver = Solver(context, config, id_start=next_id)
        tree = solver.solve(goal.predicate)
        next_id = solver.next_id
        nodes = {str(node.id): node_json(node, context) for node in iter_nodes(tree)}
        goals_out.append(
            {
                "label": goal.label,
                "root": tree.id,
                "result": tree.result.value,
                "nodes": nodes,
            }
        )
        rankings = {
            heuristic: ranking_mod.rank(tree, context, heuristic)
            for heuristic in ranking_mod.HEURISTICS
        }
        rankings_out[goal.label] = {
            heuristic: r.ids() for heuristic, r in rankings.items()
        }
        bu = bottom_up(tree, rankings[ranking_mod.INERTIA])
        views_out[goal.label] = {
            "bottom_up": {
                "heuristic": ranking_mod.INERTIA,
                "entries": [
                    {"leaf": e.leaf, "ancestor_chain": list(e.ancestor_chain)}
                    for e in bu.entries
                ],
            },
            "top_down": {
                "root": top_down(tree, FAILURES_ONLY).root,
                "visible_filter": FAILURES_ONLY,
            },
        }
    symbols = {
        str(sid): {
            "path": info.path,
            "provenance": info.provenance,
            "span": span_json(info.span),
        }
        for sid, info in context.symbol_table.items()
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "symbols": symbols,
        "goals": goals_out,
        "rankings": rankings_out,
        "views": views_out,
    }


def document_to_json(document: dict) -> str:
    """Canonical serialization: sorted keys, UTF-8, newline-terminated."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def document_from_json(text: str) -> dict:
    document = json.loads(text)
    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {version!r}")
    return document
