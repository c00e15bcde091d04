"""Root-cause ranking of failed predicates.

The fix-effort heuristic scores each failing leaf by the cheapest repair
plan (minimum correction set) containing it, where a repair plan's cost is
the summed weight of its predicates' fix-complexity categories.  Two
baseline heuristics, tree depth and inference-variable count, are provided
for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .engine import GoalNode, node_index
from .formula import dnf_normalize, to_formula
from .syntax import (
    Context,
    Existential,
    ProjectionEq,
    TraitBound,
    function_item_arity,
    head_symbol,
    infer_vars,
)
from .views import failed_leaves

INERTIA = "inertia"
DEPTH = "depth"
INFER_VARS = "infer_vars"
HEURISTICS = (INERTIA, DEPTH, INFER_VARS)


# ---------------------------------------------------------------------------
# Fix-complexity categories


@dataclass(frozen=True)
class Trait:
    self_loc: str
    trait_loc: str


@dataclass(frozen=True)
class TyChange:
    pass


@dataclass(frozen=True)
class FnToTrait:
    trait_loc: str
    arity: int


@dataclass(frozen=True)
class TyAsCallable:
    arity: int


@dataclass(frozen=True)
class DeleteFnParams:
    delta: int


@dataclass(frozen=True)
class AddFnParams:
    delta: int


@dataclass(frozen=True)
class IncorrectParams:
    arity: int


@dataclass(frozen=True)
class Misc:
    pass


GoalKind = Union[
    Trait, TyChange, FnToTrait, TyAsCallable, DeleteFnParams, AddFnParams,
    IncorrectParams, Misc,
]


def weight(kind: GoalKind) -> int:
    if isinstance(kind, Trait):
        if kind.self_loc == "local" and kind.trait_loc == "local":
            return 0
        if kind.self_loc == "external" and kind.trait_loc == "external":
            return 2
        return 1
    if isinstance(kind, FnToTrait):
        if kind.trait_loc == "local":
            return 1
        return 4 + 5 * kind.arity
    if isinstance(kind, TyAsCallable):
        return 4 + 5 * kind.arity
    if isinstance(kind, TyChange):
        return 4
    if isinstance(kind, (IncorrectParams,)):
        return 5 * kind.arity
    if isinstance(kind, (AddFnParams, DeleteFnParams)):
        return 5 * kind.delta
    if isinstance(kind, Misc):
        return 50
    raise TypeError(f"not a goal kind: {kind!r}")


def _location_of_type(t, context: Context) -> str:
    head = head_symbol(t)
    if head is None:
        return "local"
    return context.provenance_of(head)


def classify_goal(leaf: GoalNode, context: Context) -> GoalKind:
    """Categorize a failing leaf by the structure of the change that
    would fix it; Misc is the total fallback."""
    pred = leaf.predicate
    if isinstance(pred, ProjectionEq):
        return TyChange()
    if not isinstance(pred, TraitBound):
        return Misc()
    if isinstance(pred.self_type, Existential):
        return Misc()

    trait_loc = context.provenance_of(pred.instance.trait)
    trait_decl = context.trait_decl(pred.instance.trait)
    callable_arity = trait_decl.callable_arity if trait_decl else None
    fn_arity = function_item_arity(pred.self_type, context)

    if fn_arity is not None and callable_arity is None:
        return FnToTrait(trait_loc, fn_arity)
    if callable_arity is not None:
        if fn_arity is None:
            return TyAsCallable(callable_arity)
        delta = fn_arity - callable_arity
        if delta > 0:
            return DeleteFnParams(delta)
        if delta < 0:
            return AddFnParams(-delta)
        if callable_arity > 0:
            return IncorrectParams(callable_arity)
        return Misc()
    return Trait(_location_of_type(pred.self_type, context), trait_loc)


# ---------------------------------------------------------------------------
# Minimum correction sets and rankings


@dataclass(frozen=True)
class CorrectionSet:
    predicates: frozenset[int]
    score: int


@dataclass(frozen=True)
class Ranking:
    entries: tuple[tuple[int, int], ...]  # (goal node id, key), ascending
    heuristic: str

    def ids(self) -> list[int]:
        return [gid for gid, _ in self.entries]

    def index_of(self, goal_id: int) -> int:
        for i, (gid, _) in enumerate(self.entries):
            if gid == goal_id:
                return i
        raise KeyError(goal_id)


def minimum_correction_sets(
    conjuncts: list[frozenset[int]],
    weights: Optional[dict[int, int]] = None,
) -> list[CorrectionSet]:
    """Subset-minimal conjuncts: making exactly one of these sets hold
    makes the whole formula hold, and no member is redundant."""
    minimal = [
        c
        for c in conjuncts
        if not any(other < c for other in conjuncts)
    ]
    weights = weights or {}
    sets = [
        CorrectionSet(c, sum(weights.get(v, 0) for v in c)) for c in minimal
    ]
    return sorted(sets, key=lambda s: (s.score, sorted(s.predicates)))


def rank(tree: GoalNode, context: Context, heuristic: str) -> Ranking:
    """Order the failing bottom-up leaves by the given heuristic,
    ascending, ties broken by node id."""
    leaves = sorted(failed_leaves(tree))
    index = node_index(tree)
    keys: dict[int, int] = {}
    if heuristic == INERTIA:
        weights = {
            lid: weight(classify_goal(index[lid], context)) for lid in leaves
        }
        conjuncts = dnf_normalize(to_formula(tree))
        sets = minimum_correction_sets(conjuncts, weights)
        for lid in leaves:
            containing = [s.score for s in sets if lid in s.predicates]
            if containing:
                keys[lid] = min(containing)
        fallback = max(keys.values(), default=0) + 1
        for lid in leaves:
            keys.setdefault(lid, fallback)
    elif heuristic == DEPTH:
        keys = {lid: index[lid].depth for lid in leaves}
    elif heuristic == INFER_VARS:
        keys = {lid: len(infer_vars(index[lid].predicate)) for lid in leaves}
    else:
        raise ValueError(f"unknown heuristic {heuristic!r}")
    ordered = sorted(leaves, key=lambda lid: (keys[lid], lid))
    return Ranking(tuple((lid, keys[lid]) for lid in ordered), heuristic)
