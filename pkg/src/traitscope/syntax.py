"""Core data model for the trait language.

Types, trait instances, projections, predicates, and declarations form a
small nominal type system in the style of Rust's trait machinery.  All
values are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Optional, Union

LOCAL = "local"
EXTERNAL = "external"

SymbolId = int
ImplId = int


@dataclass(frozen=True)
class Span:
    file: str
    line_start: int
    line_end: int


DUMMY_SPAN = Span("<builtin>", 0, 0)


# ---------------------------------------------------------------------------
# Types


class Type:
    """Base class for type terms."""

    __slots__ = ()


@dataclass(frozen=True)
class Unit(Type):
    pass


@dataclass(frozen=True)
class TypeVar(Type):
    """A bound type variable, scoped by an enclosing binder list."""

    name: str


@dataclass(frozen=True)
class InferVar(Type):
    """An inference variable, unique per solver session."""

    index: int


@dataclass(frozen=True)
class RegionVar:
    name: str


@dataclass(frozen=True)
class Ref(Type):
    region: RegionVar
    mutable: bool
    inner: Type


@dataclass(frozen=True)
class Constructor(Type):
    """A nominal type application: the head names a declared newtype."""

    head: SymbolId
    args: tuple[Type, ...] = ()


@dataclass(frozen=True)
class TupleType(Type):
    left: Type
    right: Type


@dataclass(frozen=True)
class Function(Type):
    """Curried function type.

    Multi-parameter surface functions desugar right-associatively; the
    written parameter count survives in ``surface_arity`` (compare=False so
    it never affects structural equality or unification).
    """

    param: Type
    result: Type
    surface_arity: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class TraitInstance:
    trait: SymbolId
    type_args: tuple[Type, ...] = ()
    region_args: tuple[RegionVar, ...] = ()


@dataclass(frozen=True)
class Projection:
    """An associated-type application ``<self as Trait<..>>::Assoc<..>``."""

    self_type: Type
    assoc: SymbolId
    instance: TraitInstance
    type_args: tuple[Type, ...] = ()
    region_args: tuple[RegionVar, ...] = ()


@dataclass(frozen=True)
class ProjectionType(Type):
    projection: Projection


@dataclass(frozen=True)
class Existential(Type):
    """``dyn`` type: a witness satisfying every listed bound."""

    binder: str
    bounds: tuple["Predicate", ...]


# ---------------------------------------------------------------------------
# Predicates


class Predicate:
    __slots__ = ()


@dataclass(frozen=True)
class TraitBound(Predicate):
    self_type: Type
    instance: TraitInstance


@dataclass(frozen=True)
class Outlives(Predicate):
    self_type: Type
    region: RegionVar


@dataclass(frozen=True)
class ProjectionEq(Predicate):
    projection: Projection
    rhs: Type


# ---------------------------------------------------------------------------
# Declarations


@dataclass(frozen=True)
class Params:
    """Binder block: ``for<'r.., T..> where p..``."""

    region_binders: tuple[RegionVar, ...] = ()
    type_binders: tuple[str, ...] = ()
    where_clauses: tuple[Predicate, ...] = ()


EMPTY_PARAMS = Params()


@dataclass(frozen=True)
class Newtype:
    head: SymbolId
    params: Params
    body: Type
    provenance: str = LOCAL
    span: Span = DUMMY_SPAN


@dataclass(frozen=True)
class AssocDecl:
    name: SymbolId
    params: Params = EMPTY_PARAMS


@dataclass(frozen=True)
class TraitDecl:
    name: SymbolId
    params: Params
    assoc_decls: tuple[AssocDecl, ...] = ()
    callable_arity: Optional[int] = None
    provenance: str = LOCAL
    span: Span = DUMMY_SPAN


@dataclass(frozen=True)
class AssocBinding:
    name: SymbolId
    params: Params
    value: Type


@dataclass(frozen=True)
class ImplBlock:
    id: ImplId
    params: Params
    instance: TraitInstance
    self_type: Type
    assoc_bindings: tuple[AssocBinding, ...] = ()
    provenance: str = LOCAL
    span: Span = DUMMY_SPAN


Declaration = Union[Newtype, TraitDecl, ImplBlock]


@dataclass(frozen=True)
class SymbolInfo:
    kind: str  # "newtype" | "trait" | "assoc"
    path: str
    provenance: str
    span: Span


@dataclass(frozen=True)
class Goal:
    label: str
    predicate: Predicate
    span: Span = DUMMY_SPAN


@dataclass
class Context:
    """A parsed program: declarations, named goals, and the symbol table."""

    declarations: list[Declaration] = field(default_factory=list)
    goals: list[Goal] = field(default_factory=list)
    symbol_table: dict[SymbolId, SymbolInfo] = field(default_factory=dict)
    source_files: dict[str, str] = field(default_factory=dict)

    # -- symbol helpers

    def path_of(self, sid: SymbolId) -> str:
        return self.symbol_table[sid].path

    def name_of(self, sid: SymbolId) -> str:
        return self.symbol_table[sid].path.rsplit("::", 1)[-1]

    def provenance_of(self, sid: SymbolId) -> str:
        return self.symbol_table[sid].provenance

    def symbol_by_path(self, path: str) -> Optional[SymbolId]:
        for sid, info in self.symbol_table.items():
            if info.path == path:
                return sid
        return None

    def symbols_by_name(self, name: str) -> list[SymbolId]:
        return [
            sid
            for sid, info in self.symbol_table.items()
            if info.path.rsplit("::", 1)[-1] == name
        ]

    # -- declaration lookups

    def newtype_decl(self, sid: SymbolId) -> Optional[Newtype]:
        for decl in self.declarations:
            if isinstance(decl, Newtype) and decl.head == sid:
                return decl
        return None

    def trait_decl(self, sid: SymbolId) -> Optional[TraitDecl]:
        for decl in self.declarations:
            if isinstance(decl, TraitDecl) and decl.name == sid:
                return decl
        return None

    def impls_of(self, trait: SymbolId) -> list[ImplBlock]:
        return [
            decl
            for decl in self.declarations
            if isinstance(decl, ImplBlock) and decl.instance.trait == trait
        ]

    def impl_by_id(self, impl_id: ImplId) -> Optional[ImplBlock]:
        for decl in self.declarations:
            if isinstance(decl, ImplBlock) and decl.id == impl_id:
                return decl
        return None

    def goal_by_label(self, label: str) -> Optional[Goal]:
        for goal in self.goals:
            if goal.label == label:
                return goal
        return None


# ---------------------------------------------------------------------------
# Structural traversal

Term = Union[Type, Predicate, TraitInstance, Projection]


def transform_types(item, fn):
    """Rebuild ``item`` with ``fn`` applied to every Type node, bottom-up."""
    if isinstance(item, (Unit, TypeVar, InferVar)):
        return fn(item)
    if isinstance(item, Ref):
        return fn(replace(item, inner=transform_types(item.inner, fn)))
    if isinstance(item, Constructor):
        return fn(
            replace(item, args=tuple(transform_types(a, fn) for a in item.args))
        )
    if isinstance(item, TupleType):
        return fn(
            replace(
                item,
                left=transform_types(item.left, fn),
                right=transform_types(item.right, fn),
            )
        )
    if isinstance(item, Function):
        return fn(
            replace(
                item,
                param=transform_types(item.param, fn),
                result=transform_types(item.result, fn),
            )
        )
    if isinstance(item, ProjectionType):
        return fn(replace(item, projection=transform_types(item.projection, fn)))
    if isinstance(item, Existential):
        return fn(
            replace(
                item, bounds=tuple(transform_types(b, fn) for b in item.bounds)
            )
        )
    if isinstance(item, TraitInstance):
        return replace(
            item, type_args=tuple(transform_types(a, fn) for a in item.type_args)
        )
    if isinstance(item, Projection):
        return replace(
            item,
            self_type=transform_types(item.self_type, fn),
            instance=transform_types(item.instance, fn),
            type_args=tuple(transform_types(a, fn) for a in item.type_args),
        )
    if isinstance(item, TraitBound):
        return replace(
            item,
            self_type=transform_types(item.self_type, fn),
            instance=transform_types(item.instance, fn),
        )
    if isinstance(item, Outlives):
        return replace(item, self_type=transform_types(item.self_type, fn))
    if isinstance(item, ProjectionEq):
        return replace(
            item,
            projection=transform_types(item.projection, fn),
            rhs=transform_types(item.rhs, fn),
        )
    raise TypeError(f"cannot transform {item!r}")


def iter_types(item) -> Iterator[Type]:
    """Yield every Type node contained in ``item``, preorder."""
    if isinstance(item, Type):
        yield item
        if isinstance(item, Ref):
            yield from iter_types(item.inner)
        elif isinstance(item, Constructor):
            for a in item.args:
                yield from iter_types(a)
        elif isinstance(item, TupleType):
            yield from iter_types(item.left)
            yield from iter_types(item.right)
        elif isinstance(item, Function):
            yield from iter_types(item.param)
            yield from iter_types(item.result)
        elif isinstance(item, ProjectionType):
            yield from iter_types(item.projection)
        elif isinstance(item, Existential):
            for b in item.bounds:
                yield from iter_types(b)
    elif isinstance(item, TraitInstance):
        for a in item.type_args:
            yield from iter_types(a)
    elif isinstance(item, Projection):
        yield from iter_types(item.self_type)
        yield from iter_types(item.instance)
        for a in item.type_args:
            yield from iter_types(a)
    elif isinstance(item, TraitBound):
        yield from iter_types(item.self_type)
        yield from iter_types(item.instance)
    elif isinstance(item, Outlives):
        yield from iter_types(item.self_type)
    elif isinstance(item, ProjectionEq):
        yield from iter_types(item.projection)
        yield from iter_types(item.rhs)
    else:
        raise TypeError(f"cannot iterate {item!r}")


def infer_vars(item) -> list[int]:
    """Distinct inference-variable indices in ``item``, in first-seen order."""
    seen: list[int] = []
    for t in iter_types(item):
        if isinstance(t, InferVar) and t.index not in seen:
            seen.append(t.index)
    return seen


def type_vars(item) -> list[str]:
    """Distinct bound-variable names in ``item``, in first-seen order."""
    seen: list[str] = []
    for t in iter_types(item):
        if isinstance(t, TypeVar) and t.name not in seen:
            seen.append(t.name)
    return seen


def alpha_key(item):
    """Canonical form of a term modulo inference-variable renaming.

    Two predicates are alpha-equivalent iff their keys are equal; indices
    are replaced by order of first occurrence.
    """
    order: dict[int, int] = {}

    def canon(t: Type) -> Type:
        if isinstance(t, InferVar):
            if t.index not in order:
                order[t.index] = len(order)
            return InferVar(order[t.index])
        return t

    return transform_types(item, canon)


def head_symbol(t: Type) -> Optional[SymbolId]:
    """The outermost nominal head of a type, if it has one."""
    if isinstance(t, Constructor):
        return t.head
    if isinstance(t, Ref):
        return head_symbol(t.inner)
    return None


def function_item_arity(t: Type, context: Context) -> Optional[int]:
    """Surface arity if ``t`` is a function item or a literal function type.

    A function item is a zero-argument nominal constructor whose newtype
    body is a function type.
    """
    if isinstance(t, Function):
        return t.surface_arity if t.surface_arity is not None else 1
    if isinstance(t, Constructor) and not t.args:
        decl = context.newtype_decl(t.head)
        if decl is not None and isinstance(decl.body, Function):
            body = decl.body
            return body.surface_arity if body.surface_arity is not None else 1
    return None


def function_item_signature(
    t: Type, context: Context
) -> Optional[tuple[list[Type], Type]]:
    """Surface parameter list and result of a function item, if any."""
    fn: Optional[Function] = None
    if isinstance(t, Function):
        fn = t
    elif isinstance(t, Constructor) and not t.args:
        decl = context.newtype_decl(t.head)
        if decl is not None and isinstance(decl.body, Function):
            fn = decl.body
    if fn is None:
        return None
    arity = fn.surface_arity if fn.surface_arity is not None else 1
    params: list[Type] = []
    cursor: Type = fn
    for _ in range(arity):
        assert isinstance(cursor, Function)
        params.append(cursor.param)
        cursor = cursor.result
    return params, cursor


def strip_spans(context: Context) -> Context:
    """Copy of ``context`` with all spans normalized, for comparisons."""

    def fix_decl(decl: Declaration) -> Declaration:
        return replace(decl, span=DUMMY_SPAN)

    return Context(
        declarations=[fix_decl(d) for d in context.declarations],
        goals=[replace(g, span=DUMMY_SPAN) for g in context.goals],
        symbol_table={
            sid: replace(info, span=DUMMY_SPAN)
            for sid, info in context.symbol_table.items()
        },
        source_files={},
    )
