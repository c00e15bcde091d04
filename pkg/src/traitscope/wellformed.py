"""Arity and binding checks over a parsed context.

These are shallow structural checks (no coherence or overlap analysis):
an empty diagnostic list means the context is safe to hand to the solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .syntax import (
    Constructor,
    Context,
    Existential,
    Function,
    ImplBlock,
    Newtype,
    Outlives,
    Projection,
    ProjectionEq,
    ProjectionType,
    Ref,
    Span,
    TraitBound,
    TraitDecl,
    TraitInstance,
    TupleType,
    Type,
    TypeVar,
    iter_types,
)


@dataclass(frozen=True)
class Diagnostic:
    message: str
    span: Span


def iter_refs(item) -> Iterator[Union[TraitInstance, Projection]]:
    """Every trait instance and projection occurring in ``item``."""
    if isinstance(item, TraitInstance):
        yield item
        for a in item.type_args:
            yield from iter_refs(a)
    elif isinstance(item, Projection):
        yield item
        yield from iter_refs(item.self_type)
        yield from iter_refs(item.instance)
        for a in item.type_args:
            yield from iter_refs(a)
    elif isinstance(item, ProjectionType):
        yield from iter_refs(item.projection)
    elif isinstance(item, Existential):
        for b in item.bounds:
            yield from iter_refs(b)
    elif isinstance(item, Ref):
        yield from iter_refs(item.inner)
    elif isinstance(item, Constructor):
        for a in item.args:
            yield from iter_refs(a)
    elif isinstance(item, TupleType):
        yield from iter_refs(item.left)
        yield from iter_refs(item.right)
    elif isinstance(item, Function):
        yield from iter_refs(item.param)
        yield from iter_refs(item.result)
    elif isinstance(item, TraitBound):
        yield from iter_refs(item.self_type)
        yield from iter_refs(item.instance)
    elif isinstance(item, Outlives):
        yield from iter_refs(item.self_type)
    elif isinstance(item, ProjectionEq):
        yield from iter_refs(item.projection)
        yield from iter_refs(item.rhs)
    elif isinstance(item, Type):
        pass
    else:
        raise TypeError(f"cannot walk {item!r}")


def check_well_formed(context: Context) -> list[Diagnostic]:
    out: list[Diagnostic] = []

    def check_unbound(item, bound_vars: set[str], span: Span):
        # Scope-aware: an existential's binder is bound within its bounds.
        if isinstance(item, TypeVar):
            if item.name not in bound_vars:
                out.append(Diagnostic(f"unbound type variable {item.name!r}", span))
            return
        if isinstance(item, Existential):
            inner = bound_vars | {item.binder}
            for b in item.bounds:
                check_unbound(b, inner, span)
            return
        if isinstance(item, Type):
            children = {
                Ref: lambda t: [t.inner],
                Constructor: lambda t: list(t.args),
                TupleType: lambda t: [t.left, t.right],
                Function: lambda t: [t.param, t.result],
                ProjectionType: lambda t: [t.projection],
            }.get(type(item))
            for child in children(item) if children else []:
                check_unbound(child, bound_vars, span)
            return
        if isinstance(item, TraitInstance):
            for a in item.type_args:
                check_unbound(a, bound_vars, span)
        elif isinstance(item, Projection):
            check_unbound(item.self_type, bound_vars, span)
            check_unbound(item.instance, bound_vars, span)
            for a in item.type_args:
                check_unbound(a, bound_vars, span)
        elif isinstance(item, TraitBound):
            check_unbound(item.self_type, bound_vars, span)
            check_unbound(item.instance, bound_vars, span)
        elif isinstance(item, Outlives):
            check_unbound(item.self_type, bound_vars, span)
        elif isinstance(item, ProjectionEq):
            check_unbound(item.projection, bound_vars, span)
            check_unbound(item.rhs, bound_vars, span)

    def check_item(item, bound_vars: set[str], span: Span, allow_infer: bool):
        check_unbound(item, bound_vars, span)
        for t in iter_types(item):
            if isinstance(t, Constructor):
                decl = context.newtype_decl(t.head)
                if decl is None:
                    out.append(
                        Diagnostic(
                            f"no newtype declaration for {context.path_of(t.head)!r}",
                            span,
                        )
                    )
                elif len(t.args) != len(decl.params.type_binders):
                    out.append(
                        Diagnostic(
                            f"{context.path_of(t.head)!r} expects "
                            f"{len(decl.params.type_binders)} type arguments, "
                            f"got {len(t.args)}",
                            span,
                        )
                    )
        for ref in iter_refs(item):
            if isinstance(ref, TraitInstance):
                decl = context.trait_decl(ref.trait)
                if decl is None:
                    out.append(
                        Diagnostic(
                            f"no trait declaration for {context.path_of(ref.trait)!r}",
                            span,
                        )
                    )
                    continue
                if len(ref.type_args) != len(decl.params.type_binders):
                    out.append(
                        Diagnostic(
                            f"trait {context.path_of(ref.trait)!r} expects "
                            f"{len(decl.params.type_binders)} type arguments, "
                            f"got {len(ref.type_args)}",
                            span,
                        )
                    )
                if len(ref.region_args) != len(decl.params.region_binders):
                    out.append(
                        Diagnostic(
                            f"trait {context.path_of(ref.trait)!r} expects "
                            f"{len(decl.params.region_binders)} region arguments, "
                            f"got {len(ref.region_args)}",
                            span,
                        )
                    )
            else:  # Projection
                decl = context.trait_decl(ref.instance.trait)
                if decl is None:
                    continue
                assoc = next(
                    (a for a in decl.assoc_decls if a.name == ref.assoc), None
                )
                if assoc is None:
                    out.append(
                        Diagnostic(
                            f"trait {context.path_of(ref.instance.trait)!r} declares "
                            f"no associated type {context.path_of(ref.assoc)!r}",
                            span,
                        )
                    )
                elif len(ref.type_args) != len(assoc.params.type_binders):
                    out.append(
                        Diagnostic(
                            f"associated type {context.path_of(ref.assoc)!r} expects "
                            f"{len(assoc.params.type_binders)} type arguments, "
                            f"got {len(ref.type_args)}",
                            span,
                        )
                    )

    for decl in context.declarations:
        if isinstance(decl, Newtype):
            binders = set(decl.params.type_binders)
            check_item(decl.body, binders, decl.span, False)
            for wc in decl.params.where_clauses:
                check_item(wc, binders, decl.span, False)
        elif isinstance(decl, TraitDecl):
            binders = set(decl.params.type_binders)
            for wc in decl.params.where_clauses:
                check_item(wc, binders, decl.span, False)
        elif isinstance(decl, ImplBlock):
            binders = set(decl.params.type_binders)
            check_item(decl.self_type, binders, decl.span, False)
            check_item(decl.instance, binders, decl.span, False)
            for wc in decl.params.where_clauses:
                check_item(wc, binders, decl.span, False)
            trait_decl = context.trait_decl(decl.instance.trait)
            if trait_decl is not None:
                declared = {a.name for a in trait_decl.assoc_decls}
                bound = {b.name for b in decl.assoc_bindings}
                for missing in sorted(declared - bound):
                    out.append(
                        Diagnostic(
                            f"impl of {context.path_of(decl.instance.trait)!r} "
                            f"provides no binding for associated type "
                            f"{context.path_of(missing)!r}",
                            decl.span,
                        )
                    )
            for binding in decl.assoc_bindings:
                check_item(
                    binding.value,
                    binders | set(binding.params.type_binders),
                    decl.span,
                    False,
                )

    for goal in context.goals:
        check_item(goal.predicate, set(), goal.span, True)

    return out
