"""Pretty-printing in shortened and fully-qualified modes, plus a
round-trippable renderer for whole contexts.

Shortened mode prints terminal symbol names only and collapses every
non-empty generic argument list to ``<..>``; it never emits a module path.
Fully-qualified mode prints complete paths, regions, and all arguments.
"""

from __future__ import annotations

from .syntax import (
    AssocBinding,
    Constructor,
    Context,
    Existential,
    Function,
    ImplBlock,
    InferVar,
    Newtype,
    Outlives,
    Params,
    Projection,
    ProjectionEq,
    ProjectionType,
    Ref,
    TraitBound,
    TraitDecl,
    TraitInstance,
    TupleType,
    Type,
    TypeVar,
    Unit,
)

SHORTENED = "short"
FULLY_QUALIFIED = "qualified"


def pretty_print(item, mode: str, context: Context) -> str:
    """Deterministic text for a type, predicate, projection, or instance."""
    if isinstance(item, Type):
        return _type_text(item, mode, context)
    if isinstance(item, TraitInstance):
        return _instance_text(item, mode, context)
    if isinstance(item, Projection):
        return _projection_text(item, mode, context)
    if isinstance(item, TraitBound):
        self_text = _type_text(item.self_type, mode, context)
        return f"{self_text}: {_instance_text(item.instance, mode, context)}"
    if isinstance(item, Outlives):
        self_text = _type_text(item.self_type, mode, context)
        return f"{self_text}: '{item.region.name}"
    if isinstance(item, ProjectionEq):
        proj = _projection_text(item.projection, mode, context)
        return f"{proj} == {_type_text(item.rhs, mode, context)}"
    raise TypeError(f"cannot print {item!r}")


def _symbol_text(sid: int, mode: str, context: Context) -> str:
    return context.name_of(sid) if mode == SHORTENED else context.path_of(sid)


def _args_text(
    type_args, region_args, mode: str, context: Context, assoc: bool = False
) -> str:
    if not type_args and not region_args:
        return ""
    if mode == SHORTENED:
        return "<..>"
    parts = [_type_text(t, mode, context) for t in type_args]
    parts += [f"'{r.name}" for r in region_args]
    return "<" + ", ".join(parts) + ">"


def _instance_text(inst: TraitInstance, mode: str, context: Context) -> str:
    name = _symbol_text(inst.trait, mode, context)
    return name + _args_text(inst.type_args, inst.region_args, mode, context)


def _projection_text(proj: Projection, mode: str, context: Context) -> str:
    self_text = _type_text(proj.self_type, mode, context)
    args = _args_text(proj.type_args, proj.region_args, mode, context)
    assoc_name = context.name_of(proj.assoc)
    if mode == SHORTENED:
        return f"{self_text}.{assoc_name}{args}"
    inst = _instance_text(proj.instance, mode, context)
    return f"<{self_text} as {inst}>::{assoc_name}{args}"


def _fn_parts(t: Function) -> tuple[list[Type], Type]:
    arity = t.surface_arity if t.surface_arity is not None else 1
    if arity == 0:
        return [], t.result
    params: list[Type] = []
    cursor: Type = t
    for _ in range(arity):
        if not isinstance(cursor, Function):
            break
        params.append(cursor.param)
        cursor = cursor.result
    return params, cursor


def _type_text(t: Type, mode: str, context: Context) -> str:
    if isinstance(t, Unit):
        return "unit"
    if isinstance(t, TypeVar):
        return t.name
    if isinstance(t, InferVar):
        return f"?{t.index}"
    if isinstance(t, Ref):
        prefix = "&" if mode == SHORTENED else f"&'{t.region.name} "
        if t.mutable:
            prefix += "mut "
        return prefix + _type_text(t.inner, mode, context)
    if isinstance(t, Constructor):
        name = _symbol_text(t.head, mode, context)
        return name + _args_text(t.args, (), mode, context)
    if isinstance(t, TupleType):
        items = []
        cursor: Type = t
        while isinstance(cursor, TupleType):
            items.append(cursor.left)
            cursor = cursor.right
        items.append(cursor)
        return "(" + ", ".join(_type_text(i, mode, context) for i in items) + ")"
    if isinstance(t, Function):
        params, result = _fn_parts(t)
        inner = ", ".join(_type_text(p, mode, context) for p in params)
        return f"fn({inner}) -> {_type_text(result, mode, context)}"
    if isinstance(t, ProjectionType):
        return _projection_text(t.projection, mode, context)
    if isinstance(t, Existential):
        bounds = []
        for b in t.bounds:
            if isinstance(b, TraitBound):
                bounds.append(_instance_text(b.instance, mode, context))
            else:
                bounds.append(pretty_print(b, mode, context))
        return "dyn " + " + ".join(bounds)
    raise TypeError(f"cannot print type {t!r}")


# ---------------------------------------------------------------------------
# Context rendering (inverse of the parser, up to spans)


def _binders_text(params: Params) -> str:
    parts = [f"'{r.name}" for r in params.region_binders]
    parts += list(params.type_binders)
    return f"<{', '.join(parts)}>" if parts else ""


def _where_text(params: Params, context: Context) -> str:
    if not params.where_clauses:
        return ""
    preds = ", ".join(
        pretty_print(p, FULLY_QUALIFIED, context) for p in params.where_clauses
    )
    return f" where {preds}"


def render(context: Context) -> str:
    """Serialize a context back to surface syntax.

    Declarations are emitted in order (module-scoped ones inside ``mod``
    blocks, impls at the root) with all symbol references fully qualified,
    so re-parsing yields an equal context up to spans.
    """
    lines: list[str] = []

    def emit(text: str, module: tuple[str, ...]):
        if module:
            lines.append(f"mod {'::'.join(module)} {{ {text} }}")
        else:
            lines.append(text)

    for decl in context.declarations:
        extern = "extern " if decl.provenance == "external" else ""
        if isinstance(decl, Newtype):
            path = context.path_of(decl.head).split("::")
            module, name = tuple(path[:-1]), path[-1]
            body = pretty_print(decl.body, FULLY_QUALIFIED, context)
            emit(
                f"{extern}newtype {name}{_binders_text(decl.params)} = {body};",
                module,
            )
        elif isinstance(decl, TraitDecl):
            path = context.path_of(decl.name).split("::")
            module, name = tuple(path[:-1]), path[-1]
            attr = (
                f"#[callable(arity={decl.callable_arity})] "
                if decl.callable_arity is not None
                else ""
            )
            head = (
                f"{attr}{extern}trait {name}{_binders_text(decl.params)}"
                f"{_where_text(decl.params, context)}"
            )
            if decl.assoc_decls:
                assocs = " ".join(
                    f"type {context.name_of(a.name)}{_binders_text(a.params)};"
                    for a in decl.assoc_decls
                )
                emit(f"{head} {{ {assocs} }}", module)
            else:
                emit(f"{head};", module)
        elif isinstance(decl, ImplBlock):
            inst = _instance_text(decl.instance, FULLY_QUALIFIED, context)
            self_text = pretty_print(decl.self_type, FULLY_QUALIFIED, context)
            head = (
                f"{extern}impl{_binders_text(decl.params)} {inst} for {self_text}"
                f"{_where_text(decl.params, context)}"
            )
            if decl.assoc_bindings:
                bindings = " ".join(_binding_text(b, context) for b in decl.assoc_bindings)
                emit(f"{head} {{ {bindings} }}", ())
            else:
                emit(f"{head};", ())
    for goal in context.goals:
        pred = pretty_print(goal.predicate, FULLY_QUALIFIED, context)
        lines.append(f"goal {goal.label}: {pred};")
    return "\n".join(lines) + "\n"


def _binding_text(binding: AssocBinding, context: Context) -> str:
    name = context.name_of(binding.name)
    value = pretty_print(binding.value, FULLY_QUALIFIED, context)
    return f"type {name}{_binders_text(binding.params)} = {value};"
