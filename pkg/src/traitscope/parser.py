"""Surface syntax for the trait language (`.tl` files).

Declarations::

    newtype Name<'r, T> = <type>;
    #[callable(arity=N)]                     // marks a function-style trait
    trait Name<T> where <preds> { type Assoc; }
    impl<'r, T> Trait<Args> for <type> where <preds> { type Assoc = <type>; }
    goal label: <predicate>;
    mod a::b { .. }                          // path prefix for contents

An ``extern`` prefix on a declaration (or a whole ``mod`` block) marks it
as externally defined.  Types: ``unit``, ``'r``, ``&'r T``, ``&'r mut T``,
``Name<..>``, ``(A, B)``, ``fn(A, B) -> C``, ``<T as Trait<..>>::Assoc``,
``dyn Tr1 + Tr2``, and ``?N`` inference variables (goals only).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .syntax import (
    LOCAL,
    AssocBinding,
    AssocDecl,
    Constructor,
    Context,
    Existential,
    Function,
    Goal,
    ImplBlock,
    InferVar,
    Newtype,
    Outlives,
    Params,
    Predicate,
    Projection,
    ProjectionEq,
    ProjectionType,
    Ref,
    RegionVar,
    Span,
    SymbolInfo,
    TraitBound,
    TraitDecl,
    TraitInstance,
    TupleType,
    Type,
    TypeVar,
    Unit,
)

KEYWORDS = {
    "newtype", "trait", "impl", "goal", "where", "for", "type",
    "extern", "mod", "unit", "fn", "dyn", "mut", "as",
}

PUNCT = ["::", "->", "==", "<", ">", ",", ";", ":", "(", ")",
         "{", "}", "=", "&", "+", "#", "[", "]"]


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        loc = f"{line}:{col}"
        if expected:
            message = f"{message} (expected one of: {', '.join(sorted(expected))})"
        super().__init__(f"{loc}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "lifetime" | "int" | "infer" | "punct" | "eof"
    text: str
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        start_col = col
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("ident", source[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if c == "'":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            if j == i + 1:
                raise ParseError("empty region name", line, start_col)
            tokens.append(Token("lifetime", source[i + 1 : j], line, start_col))
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("int", source[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if c == "?":
            j = i + 1
            while j < n and source[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("expected digits after '?'", line, start_col)
            tokens.append(Token("infer", source[i + 1 : j], line, start_col))
            col += j - i
            i = j
            continue
        for p in PUNCT:
            if source.startswith(p, i):
                tokens.append(Token("punct", p, line, start_col))
                col += len(p)
                i += len(p)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", line, start_col)
    tokens.append(Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Surface AST (unresolved names)


@dataclass(frozen=True)
class SName:
    segments: tuple[str, ...]
    type_args: tuple["SType", ...]
    region_args: tuple[str, ...]
    line: int
    col: int


@dataclass(frozen=True)
class SUnit:
    pass


@dataclass(frozen=True)
class SInfer:
    index: int
    line: int
    col: int


@dataclass(frozen=True)
class SRef:
    region: str
    mutable: bool
    inner: "SType"


@dataclass(frozen=True)
class STuple:
    items: tuple["SType", ...]


@dataclass(frozen=True)
class SFn:
    params: tuple["SType", ...]
    result: "SType"


@dataclass(frozen=True)
class STraitRef:
    segments: tuple[str, ...]
    type_args: tuple["SType", ...]
    region_args: tuple[str, ...]
    line: int
    col: int


@dataclass(frozen=True)
class SProj:
    self_type: "SType"
    trait: STraitRef
    assoc: str
    type_args: tuple["SType", ...]
    region_args: tuple[str, ...]
    line: int
    col: int


@dataclass(frozen=True)
class SDyn:
    bounds: tuple[STraitRef, ...]


SType = Union[SName, SUnit, SInfer, SRef, STuple, SFn, SProj, SDyn]


@dataclass(frozen=True)
class SBound:
    self_type: SType
    trait: STraitRef


@dataclass(frozen=True)
class SOutlives:
    self_type: SType
    region: str


@dataclass(frozen=True)
class SProjEq:
    projection: SProj
    rhs: SType


SPred = Union[SBound, SOutlives, SProjEq]


@dataclass(frozen=True)
class SBinders:
    regions: tuple[str, ...] = ()
    types: tuple[str, ...] = ()


@dataclass
class SNewtype:
    name: str
    binders: SBinders
    wheres: list[SPred]
    body: SType
    extern: bool
    span: Span


@dataclass
class STraitDecl:
    name: str
    binders: SBinders
    wheres: list[SPred]
    assocs: list[tuple[str, SBinders]]
    callable_arity: Optional[int]
    extern: bool
    span: Span


@dataclass
class SImpl:
    binders: SBinders
    wheres: list[SPred]
    trait: STraitRef
    self_type: SType
    bindings: list[tuple[str, SBinders, SType]]
    extern: bool
    span: Span


@dataclass
class SGoal:
    label: str
    predicate: SPred
    span: Span


@dataclass
class SMod:
    path: tuple[str, ...]
    extern: bool
    items: list = field(default_factory=list)


SItem = Union[SNewtype, STraitDecl, SImpl, SGoal, SMod]


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token plumbing

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == text

    def at_word(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text == word

    def expect_punct(self, text: str) -> Token:
        tok = self.peek()
        if not self.at_punct(text):
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col, (text,))
        return self.next()

    def expect_word(self, word: str) -> Token:
        tok = self.peek()
        if not self.at_word(word):
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col, (word,))
        return self.next()

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok.kind != "ident" or tok.text in KEYWORDS:
            raise ParseError(
                f"expected identifier, found {tok.text!r}", tok.line, tok.col,
                ("identifier",),
            )
        return self.next()

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind != "int":
            raise ParseError(
                f"expected integer, found {tok.text!r}", tok.line, tok.col, ("integer",)
            )
        self.next()
        return int(tok.text)

    # -- items

    def parse_items(self, stop_at_brace: bool) -> list[SItem]:
        items: list[SItem] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                break
            if stop_at_brace and self.at_punct("}"):
                break
            items.append(self.parse_item())
        return items

    def parse_item(self) -> SItem:
        callable_arity = self.parse_attrs()
        extern = False
        if self.at_word("extern"):
            self.next()
            extern = True
        tok = self.peek()
        if self.at_word("mod"):
            if callable_arity is not None:
                raise ParseError("attribute not allowed on mod", tok.line, tok.col)
            return self.parse_mod(extern)
        if self.at_word("newtype"):
            return self.parse_newtype(extern)
        if self.at_word("trait"):
            return self.parse_trait(extern, callable_arity)
        if self.at_word("impl"):
            return self.parse_impl(extern)
        if self.at_word("goal"):
            if extern:
                raise ParseError("goals cannot be extern", tok.line, tok.col)
            return self.parse_goal()
        raise ParseError(
            f"unexpected {tok.text!r}", tok.line, tok.col,
            ("newtype", "trait", "impl", "goal", "mod", "extern"),
        )

    def parse_attrs(self) -> Optional[int]:
        if not self.at_punct("#"):
            return None
        self.next()
        self.expect_punct("[")
        name = self.expect_ident()
        if name.text != "callable":
            raise ParseError(f"unknown attribute {name.text!r}", name.line, name.col)
        self.expect_punct("(")
        key = self.expect_ident()
        if key.text != "arity":
            raise ParseError(f"unknown attribute key {key.text!r}", key.line, key.col)
        self.expect_punct("=")
        arity = self.expect_int()
        self.expect_punct(")")
        self.expect_punct("]")
        return arity

    def parse_mod(self, extern: bool) -> SMod:
        self.expect_word("mod")
        path = [self.expect_ident().text]
        while self.at_punct("::"):
            self.next()
            path.append(self.expect_ident().text)
        self.expect_punct("{")
        items = self.parse_items(stop_at_brace=True)
        self.expect_punct("}")
        return SMod(tuple(path), extern, items)

    def parse_binders(self) -> SBinders:
        if not self.at_punct("<"):
            return SBinders()
        self.next()
        regions: list[str] = []
        types: list[str] = []
        while not self.at_punct(">"):
            tok = self.peek()
            if tok.kind == "lifetime":
                regions.append(self.next().text)
            else:
                types.append(self.expect_ident().text)
            if self.at_punct(","):
                self.next()
        self.expect_punct(">")
        return SBinders(tuple(regions), tuple(types))

    def parse_wheres(self) -> list[SPred]:
        if not self.at_word("where"):
            return []
        self.next()
        preds = [self.parse_predicate()]
        while self.at_punct(","):
            self.next()
            preds.append(self.parse_predicate())
        return preds

    def parse_newtype(self, extern: bool) -> SNewtype:
        start = self.expect_word("newtype")
        name = self.expect_ident().text
        binders = self.parse_binders()
        self.expect_punct("=")
        body = self.parse_type()
        end = self.expect_punct(";")
        return SNewtype(name, binders, [], body, extern, _span(start, end))

    def parse_trait(self, extern: bool, callable_arity: Optional[int]) -> STraitDecl:
        start = self.expect_word("trait")
        name = self.expect_ident().text
        binders = self.parse_binders()
        wheres = self.parse_wheres()
        assocs: list[tuple[str, SBinders]] = []
        if self.at_punct("{"):
            self.next()
            while not self.at_punct("}"):
                self.expect_word("type")
                assoc_name = self.expect_ident().text
                assoc_binders = self.parse_binders()
                self.expect_punct(";")
                assocs.append((assoc_name, assoc_binders))
            end = self.expect_punct("}")
        else:
            end = self.expect_punct(";")
        return STraitDecl(
            name, binders, wheres, assocs, callable_arity, extern, _span(start, end)
        )

    def parse_impl(self, extern: bool) -> SImpl:
        start = self.expect_word("impl")
        binders = self.parse_binders()
        trait = self.parse_trait_ref()
        self.expect_word("for")
        self_type = self.parse_type()
        wheres = self.parse_wheres()
        bindings: list[tuple[str, SBinders, SType]] = []
        if self.at_punct("{"):
            self.next()
            while not self.at_punct("}"):
                self.expect_word("type")
                assoc_name = self.expect_ident().text
                assoc_binders = self.parse_binders()
                self.expect_punct("=")
                value = self.parse_type()
                self.expect_punct(";")
                bindings.append((assoc_name, assoc_binders, value))
            end = self.expect_punct("}")
        else:
            end = self.expect_punct(";")
        return SImpl(binders, wheres, trait, self_type, bindings, extern, _span(start, end))

    def parse_goal(self) -> SGoal:
        start = self.expect_word("goal")
        label = self.expect_ident().text
        self.expect_punct(":")
        pred = self.parse_predicate()
        end = self.expect_punct(";")
        return SGoal(label, pred, _span(start, end))

    # -- predicates and types

    def parse_predicate(self) -> SPred:
        if self.at_punct("<"):
            proj = self.parse_projection()
            self.expect_punct("==")
            rhs = self.parse_type()
            return SProjEq(proj, rhs)
        self_type = self.parse_type()
        self.expect_punct(":")
        tok = self.peek()
        if tok.kind == "lifetime":
            self.next()
            return SOutlives(self_type, tok.text)
        return SBound(self_type, self.parse_trait_ref())

    def parse_trait_ref(self) -> STraitRef:
        first = self.expect_ident()
        segments = [first.text]
        while self.at_punct("::"):
            self.next()
            segments.append(self.expect_ident().text)
        type_args, region_args = self.parse_generic_args()
        return STraitRef(tuple(segments), type_args, region_args, first.line, first.col)

    def parse_generic_args(self) -> tuple[tuple[SType, ...], tuple[str, ...]]:
        if not self.at_punct("<"):
            return (), ()
        self.next()
        type_args: list[SType] = []
        region_args: list[str] = []
        while not self.at_punct(">"):
            tok = self.peek()
            if tok.kind == "lifetime":
                region_args.append(self.next().text)
            else:
                type_args.append(self.parse_type())
            if self.at_punct(","):
                self.next()
        self.expect_punct(">")
        return tuple(type_args), tuple(region_args)

    def parse_projection(self) -> SProj:
        start = self.expect_punct("<")
        self_type = self.parse_type()
        self.expect_word("as")
        trait = self.parse_trait_ref()
        self.expect_punct(">")
        self.expect_punct("::")
        assoc = self.expect_ident().text
        type_args, region_args = self.parse_generic_args()
        return SProj(
            self_type, trait, assoc, type_args, region_args, start.line, start.col
        )

    def parse_type(self) -> SType:
        tok = self.peek()
        if self.at_word("unit"):
            self.next()
            return SUnit()
        if tok.kind == "infer":
            self.next()
            return SInfer(int(tok.text), tok.line, tok.col)
        if self.at_punct("&"):
            self.next()
            region = self.peek()
            if region.kind != "lifetime":
                raise ParseError(
                    "expected region after '&'", region.line, region.col, ("'region",)
                )
            self.next()
            mutable = False
            if self.at_word("mut"):
                self.next()
                mutable = True
            return SRef(region.text, mutable, self.parse_type())
        if self.at_punct("("):
            self.next()
            items = [self.parse_type()]
            while self.at_punct(","):
                self.next()
                items.append(self.parse_type())
            self.expect_punct(")")
            if len(items) == 1:
                return items[0]
            return STuple(tuple(items))
        if self.at_word("fn"):
            self.next()
            self.expect_punct("(")
            params: list[SType] = []
            while not self.at_punct(")"):
                params.append(self.parse_type())
                if self.at_punct(","):
                    self.next()
            self.expect_punct(")")
            self.expect_punct("->")
            result = self.parse_type()
            return SFn(tuple(params), result)
        if self.at_punct("<"):
            return self.parse_projection()
        if self.at_word("dyn"):
            self.next()
            bounds = [self.parse_trait_ref()]
            while self.at_punct("+"):
                self.next()
                bounds.append(self.parse_trait_ref())
            return SDyn(tuple(bounds))
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            first = self.expect_ident()
            segments = [first.text]
            while self.at_punct("::"):
                self.next()
                segments.append(self.expect_ident().text)
            type_args, region_args = self.parse_generic_args()
            return SName(
                tuple(segments), type_args, region_args, first.line, first.col
            )
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col, ("type",))


def _span(start: Token, end: Token) -> Span:
    return Span("", start.line, end.line)


# ---------------------------------------------------------------------------
# Resolution


class Resolver:
    def __init__(self, items: list[SItem], provenance_default: str, filename: str):
        self.items = items
        self.default = provenance_default
        self.filename = filename
        self.symbols: dict[int, SymbolInfo] = {}
        self.by_path: dict[str, int] = {}
        self.trait_assocs: dict[int, dict[str, int]] = {}
        self.trait_surface: dict[int, STraitDecl] = {}
        self.next_symbol = 0
        self.next_impl = 0
        self.in_goal = False

    def define(self, kind: str, path: str, provenance: str, span: Span) -> int:
        if path in self.by_path:
            raise ParseError(
                f"duplicate symbol definition {path!r}", span.line_start, 1
            )
        sid = self.next_symbol
        self.next_symbol += 1
        self.symbols[sid] = SymbolInfo(kind, path, provenance, span)
        self.by_path[path] = sid
        return sid

    def collect(self, items: list[SItem], prefix: tuple[str, ...], mod_extern: bool):
        for item in items:
            if isinstance(item, SMod):
                self.collect(item.items, prefix + item.path, mod_extern or item.extern)
                continue
            if isinstance(item, SGoal):
                continue
            provenance = "external" if (item.extern or mod_extern) else self.default
            span = Span(self.filename, item.span.line_start, item.span.line_end)
            if isinstance(item, SNewtype):
                path = "::".join(prefix + (item.name,))
                self.define("newtype", path, provenance, span)
            elif isinstance(item, STraitDecl):
                path = "::".join(prefix + (item.name,))
                sid = self.define("trait", path, provenance, span)
                assoc_ids: dict[str, int] = {}
                for assoc_name, _ in item.assocs:
                    assoc_ids[assoc_name] = self.define(
                        "assoc", f"{path}::{assoc_name}", provenance, span
                    )
                self.trait_assocs[sid] = assoc_ids
                self.trait_surface[sid] = item

    def resolve_path(
        self, segments: tuple[str, ...], scope: tuple[str, ...], kind: str,
        line: int, col: int,
    ) -> int:
        candidates: list[str] = []
        if len(segments) > 1:
            candidates.append("::".join(segments))
        for depth in range(len(scope), -1, -1):
            candidates.append("::".join(scope[:depth] + segments))
        for path in candidates:
            sid = self.by_path.get(path)
            if sid is not None:
                if self.symbols[sid].kind != kind:
                    raise ParseError(
                        f"{path!r} is a {self.symbols[sid].kind}, not a {kind}",
                        line, col,
                    )
                return sid
        raise ParseError(f"unresolved symbol {'::'.join(segments)!r}", line, col)

    def resolve_trait_ref(
        self, ref: STraitRef, scope: tuple[str, ...], binders: set[str]
    ) -> TraitInstance:
        trait = self.resolve_path(ref.segments, scope, "trait", ref.line, ref.col)
        return TraitInstance(
            trait,
            tuple(self.resolve_type(t, scope, binders) for t in ref.type_args),
            tuple(RegionVar(r) for r in ref.region_args),
        )

    def resolve_proj(
        self, proj: SProj, scope: tuple[str, ...], binders: set[str]
    ) -> Projection:
        instance = self.resolve_trait_ref(proj.trait, scope, binders)
        assoc_ids = self.trait_assocs.get(instance.trait, {})
        assoc = assoc_ids.get(proj.assoc)
        if assoc is None:
            trait_path = self.symbols[instance.trait].path
            raise ParseError(
                f"trait {trait_path!r} declares no associated type {proj.assoc!r}",
                proj.line, proj.col,
            )
        return Projection(
            self.resolve_type(proj.self_type, scope, binders),
            assoc,
            instance,
            tuple(self.resolve_type(t, scope, binders) for t in proj.type_args),
            tuple(RegionVar(r) for r in proj.region_args),
        )

    def resolve_type(
        self, st: SType, scope: tuple[str, ...], binders: set[str]
    ) -> Type:
        if isinstance(st, SUnit):
            return Unit()
        if isinstance(st, SInfer):
            if not self.in_goal:
                raise ParseError(
                    "inference variables are only allowed in goals", st.line, st.col
                )
            return InferVar(st.index)
        if isinstance(st, SRef):
            return Ref(
                RegionVar(st.region), st.mutable,
                self.resolve_type(st.inner, scope, binders),
            )
        if isinstance(st, STuple):
            resolved = [self.resolve_type(t, scope, binders) for t in st.items]
            result = resolved[-1]
            for item in reversed(resolved[:-1]):
                result = TupleType(item, result)
            return result
        if isinstance(st, SFn):
            result = self.resolve_type(st.result, scope, binders)
            params = [self.resolve_type(p, scope, binders) for p in st.params]
            if not params:
                return Function(Unit(), result, surface_arity=0)
            for param in reversed(params[1:]):
                result = Function(param, result)
            return Function(params[0], result, surface_arity=len(params))
        if isinstance(st, SProj):
            return ProjectionType(self.resolve_proj(st, scope, binders))
        if isinstance(st, SDyn):
            bounds = tuple(
                TraitBound(TypeVar("Self"), self.resolve_trait_ref(b, scope, binders))
                for b in st.bounds
            )
            return Existential("Self", bounds)
        if isinstance(st, SName):
            if len(st.segments) == 1 and st.segments[0] in binders:
                if st.type_args or st.region_args:
                    raise ParseError(
                        f"type parameter {st.segments[0]!r} takes no arguments",
                        st.line, st.col,
                    )
                return TypeVar(st.segments[0])
            head = self.resolve_path(st.segments, scope, "newtype", st.line, st.col)
            return Constructor(
                head, tuple(self.resolve_type(t, scope, binders) for t in st.type_args)
            )
        raise ParseError("unparseable type", 0, 0)

    def resolve_pred(
        self, sp: SPred, scope: tuple[str, ...], binders: set[str]
    ) -> Predicate:
        if isinstance(sp, SBound):
            return TraitBound(
                self.resolve_type(sp.self_type, scope, binders),
                self.resolve_trait_ref(sp.trait, scope, binders),
            )
        if isinstance(sp, SOutlives):
            return Outlives(
                self.resolve_type(sp.self_type, scope, binders), RegionVar(sp.region)
            )
        if isinstance(sp, SProjEq):
            return ProjectionEq(
                self.resolve_proj(sp.projection, scope, binders),
                self.resolve_type(sp.rhs, scope, binders),
            )
        raise ParseError("unparseable predicate", 0, 0)

    def resolve_params(
        self, binders: SBinders, wheres: list[SPred], scope: tuple[str, ...],
        outer: set[str] = frozenset(),
    ) -> Params:
        names = set(binders.types) | set(outer)
        if len(set(binders.types)) != len(binders.types):
            raise ParseError(f"repeated binder in {binders.types}", 0, 0)
        return Params(
            tuple(RegionVar(r) for r in binders.regions),
            tuple(binders.types),
            tuple(self.resolve_pred(p, scope, names) for p in wheres),
        )

    def run(self) -> Context:
        self.collect(self.items, (), False)
        context = Context(symbol_table=self.symbols)
        self.emit(self.items, (), False, context)
        return context

    def emit(
        self, items: list[SItem], prefix: tuple[str, ...], mod_extern: bool,
        context: Context,
    ):
        for item in items:
            if isinstance(item, SMod):
                self.emit(item.items, prefix + item.path, mod_extern or item.extern, context)
                continue
            if isinstance(item, SGoal):
                self.in_goal = True
                pred = self.resolve_pred(item.predicate, prefix, set())
                self.in_goal = False
                span = Span(self.filename, item.span.line_start, item.span.line_end)
                if any(g.label == item.label for g in context.goals):
                    raise ParseError(
                        f"duplicate goal label {item.label!r}", item.span.line_start, 1
                    )
                context.goals.append(Goal(item.label, pred, span))
                continue

            provenance = "external" if (item.extern or mod_extern) else self.default
            span = Span(self.filename, item.span.line_start, item.span.line_end)
            if isinstance(item, SNewtype):
                sid = self.by_path["::".join(prefix + (item.name,))]
                params = self.resolve_params(item.binders, item.wheres, prefix)
                body = self.resolve_type(item.body, prefix, set(item.binders.types))
                context.declarations.append(
                    Newtype(sid, params, body, provenance, span)
                )
            elif isinstance(item, STraitDecl):
                sid = self.by_path["::".join(prefix + (item.name,))]
                params = self.resolve_params(item.binders, item.wheres, prefix)
                assoc_decls = []
                for assoc_name, assoc_binders in item.assocs:
                    assoc_sid = self.trait_assocs[sid][assoc_name]
                    assoc_params = self.resolve_params(
                        assoc_binders, [], prefix, outer=set(item.binders.types)
                    )
                    assoc_decls.append(AssocDecl(assoc_sid, assoc_params))
                context.declarations.append(
                    TraitDecl(
                        sid, params, tuple(assoc_decls), item.callable_arity,
                        provenance, span,
                    )
                )
            elif isinstance(item, SImpl):
                binder_names = set(item.binders.types)
                instance = self.resolve_trait_ref(item.trait, prefix, binder_names)
                self_type = self.resolve_type(item.self_type, prefix, binder_names)
                params = self.resolve_params(item.binders, item.wheres, prefix)
                assoc_ids = self.trait_assocs.get(instance.trait, {})
                bindings = []
                for assoc_name, assoc_binders, value in item.bindings:
                    assoc_sid = assoc_ids.get(assoc_name)
                    if assoc_sid is None:
                        trait_path = self.symbols[instance.trait].path
                        raise ParseError(
                            f"impl binds {assoc_name!r}, which trait "
                            f"{trait_path!r} does not declare",
                            item.span.line_start, 1,
                        )
                    value_ty = self.resolve_type(
                        value, prefix, binder_names | set(assoc_binders.types)
                    )
                    bindings.append(
                        AssocBinding(
                            assoc_sid,
                            self.resolve_params(assoc_binders, [], prefix, binder_names),
                            value_ty,
                        )
                    )
                impl_id = self.next_impl
                self.next_impl += 1
                context.declarations.append(
                    ImplBlock(
                        impl_id, params, instance, self_type, tuple(bindings),
                        provenance, span,
                    )
                )


def parse_context(
    source: str, provenance_default: str = LOCAL, filename: str = "<input>"
) -> Context:
    """Parse `.tl` source text into a resolved Context.

    Raises ParseError on syntax errors, unresolved or duplicate symbols,
    and impls binding associated types their trait does not declare.
    """
    tokens = tokenize(source)
    items = Parser(tokens).parse_items(stop_at_brace=False)
    context = Resolver(items, provenance_default, filename).run()
    context.source_files[filename] = source
    return context
