"""First-order syntactic unification over trait-language types.

Substitutions are kept idempotent: binding a variable rewrites every
existing right-hand side, so applying a substitution twice equals applying
it once.  Region variables never constrain unification; they are carried
for display only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .syntax import (
    Constructor,
    Existential,
    Function,
    InferVar,
    ProjectionType,
    Ref,
    TupleType,
    Type,
    TypeVar,
    Unit,
    infer_vars,
    transform_types,
)

CONSTRUCTOR_MISMATCH = "constructor mismatch"
ARITY_MISMATCH = "arity mismatch"
OCCURS_CHECK = "occurs-check violation"


class UnifyFailure(Exception):
    """Raised when two types have no unifier."""

    def __init__(self, kind: str, left: Type, right: Type):
        super().__init__(f"{kind}: cannot unify {left!r} with {right!r}")
        self.kind = kind
        self.left = left
        self.right = right


@dataclass(frozen=True)
class Substitution:
    """Idempotent mapping from inference-variable index to type."""

    mapping: dict[int, Type] = field(default_factory=dict)

    @staticmethod
    def empty() -> "Substitution":
        return Substitution({})

    def lookup(self, index: int) -> Optional[Type]:
        return self.mapping.get(index)

    def apply(self, item):
        """Replace every mapped inference variable inside ``item``."""
        if not self.mapping:
            return item

        def repl(t: Type) -> Type:
            if isinstance(t, InferVar):
                return self.mapping.get(t.index, t)
            return t

        return transform_types(item, repl)

    def bind(self, index: int, value: Type) -> "Substitution":
        """Extend with ``?index -> value``, keeping idempotency."""
        value = self.apply(value)
        if value == InferVar(index):
            return self
        if index in infer_vars(value):
            raise UnifyFailure(OCCURS_CHECK, InferVar(index), value)
        single = Substitution({index: value})
        mapping = {i: single.apply(t) for i, t in self.mapping.items()}
        mapping[index] = value
        return Substitution(mapping)

    def __len__(self) -> int:
        return len(self.mapping)


def apply_subst(target, subst: Substitution):
    """Apply ``subst`` to a type, predicate, instance, or projection."""
    return subst.apply(target)


def unify(left: Type, right: Type, subst: Optional[Substitution] = None) -> Substitution:
    """Most general unifier extending ``subst``, or raise UnifyFailure.

    Projections and existentials unify only when structurally identical;
    their normalization is the solver's job, not the unifier's.
    """
    subst = subst if subst is not None else Substitution.empty()
    left = subst.apply(left)
    right = subst.apply(right)

    if left == right:
        return subst
    if isinstance(left, InferVar):
        return subst.bind(left.index, right)
    if isinstance(right, InferVar):
        return subst.bind(right.index, left)

    if isinstance(left, Constructor) and isinstance(right, Constructor):
        if left.head != right.head:
            raise UnifyFailure(CONSTRUCTOR_MISMATCH, left, right)
        if len(left.args) != len(right.args):
            raise UnifyFailure(ARITY_MISMATCH, left, right)
        for a, b in zip(left.args, right.args):
            subst = unify(a, b, subst)
        return subst
    if isinstance(left, TupleType) and isinstance(right, TupleType):
        subst = unify(left.left, right.left, subst)
        return unify(left.right, right.right, subst)
    if isinstance(left, Function) and isinstance(right, Function):
        subst = unify(left.param, right.param, subst)
        return unify(left.result, right.result, subst)
    if isinstance(left, Ref) and isinstance(right, Ref):
        if left.mutable != right.mutable:
            raise UnifyFailure(CONSTRUCTOR_MISMATCH, left, right)
        # Regions never constrain solving.
        return unify(left.inner, right.inner, subst)
    if isinstance(left, (Unit, TypeVar, ProjectionType, Existential)) or isinstance(
        right, (Unit, TypeVar, ProjectionType, Existential)
    ):
        raise UnifyFailure(CONSTRUCTOR_MISMATCH, left, right)
    raise UnifyFailure(CONSTRUCTOR_MISMATCH, left, right)


def unifiable(left: Type, right: Type, subst: Optional[Substitution] = None) -> bool:
    try:
        unify(left, right, subst)
        return True
    except UnifyFailure:
        return False
