"""The trait solver: evaluates predicates into And-Or inference trees.

A goal node evaluates a predicate and succeeds if one of its candidate
nodes succeeds; a candidate (an impl block or built-in rule) succeeds if
all of its subgoals succeed.  The engine explores every candidate even
after one succeeds, because the debugger must display the entire tree.

Cycles are cut at the first predicate repeated modulo inference-variable
renaming on the current path, and reported as overflow; a configurable
depth bound catches non-cyclic divergence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .syntax import (
    Context,
    Existential,
    ImplBlock,
    InferVar,
    Outlives,
    Predicate,
    Projection,
    ProjectionEq,
    ProjectionType,
    TraitBound,
    Type,
    TypeVar,
    alpha_key,
    function_item_signature,
    infer_vars,
    transform_types,
)
from .unify import Substitution, UnifyFailure, unify

YES = "yes"
NO = "no"
MAYBE = "maybe"


@dataclass(frozen=True)
class Ambiguous:
    infer_vars: tuple[int, ...]


@dataclass(frozen=True)
class Overflow:
    cycle_path: tuple[int, ...]


@dataclass(frozen=True)
class NoCandidates:
    pass


Reason = Union[Ambiguous, Overflow, NoCandidates]


@dataclass(frozen=True)
class EvalResult:
    value: str  # "yes" | "no" | "maybe"
    reason: Optional[Reason] = None

    @property
    def is_yes(self) -> bool:
        return self.value == YES


@dataclass(frozen=True)
class BuiltIn:
    """A solver rule that is not backed by an impl block."""

    kind: str


OUTLIVES_ASSUMED = BuiltIn("outlives_assumed")
DYN_BOUND = BuiltIn("dyn_bound")
FN_ITEM_CALLABLE = BuiltIn("fn_item_callable")
PROJECTION_NORMALIZE = BuiltIn("projection_normalize")
TYPE_EQUALITY = BuiltIn("type_equality")


@dataclass
class CandidateNode:
    id: int
    impl_ref: Union[int, BuiltIn]
    unifier: Substitution
    subgoals: list["GoalNode"]
    result: EvalResult
    parent: int
    depth: int
    # engine-internal state, not serialized
    binder_map: dict[str, Type] = field(default_factory=dict)
    # substitution after this candidate succeeded; None when not applicable
    out_subst: Optional[Substitution] = None


@dataclass
class GoalNode:
    id: int
    predicate: Predicate
    result: EvalResult
    candidates: list[CandidateNode]
    depth: int
    parent: Optional[int] = None


@dataclass(frozen=True)
class SolveConfig:
    max_depth: int = 64
    dedup_snapshots: bool = True

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


class Unresolved:
    """Sentinel: a projection did not normalize to a concrete type."""

    def __repr__(self) -> str:
        return "Unresolved"


UNRESOLVED = Unresolved()


def _subst_type_vars(item, mapping: dict[str, Type]):
    if not mapping:
        return item

    def repl(t: Type) -> Type:
        if isinstance(t, TypeVar):
            return mapping.get(t.name, t)
        return t

    return transform_types(item, repl)


class Solver:
    def __init__(self, context: Context, config: SolveConfig, id_start: int = 0):
        self.context = context
        self.config = config
        self.next_id = id_start
        self.next_fresh = 0

    def new_id(self) -> int:
        nid = self.next_id
        self.next_id += 1
        return nid

    def fresh_var(self) -> InferVar:
        v = InferVar(self.next_fresh)
        self.next_fresh += 1
        return v

    def solve(self, predicate: Predicate) -> GoalNode:
        vs = infer_vars(predicate)
        self.next_fresh = max(vs, default=-1) + 1
        node, _ = self.eval_goal(predicate, Substitution.empty(), 0, (), None)
        return node

    # -- goal evaluation

    def eval_goal(
        self,
        predicate: Predicate,
        subst: Substitution,
        depth: int,
        path: tuple[tuple[int, object], ...],
        parent: Optional[int],
    ) -> tuple[GoalNode, Substitution]:
        predicate = subst.apply(predicate)
        gid = self.new_id()

        if depth > self.config.max_depth:
            result = EvalResult(MAYBE, Overflow((gid,)))
            return GoalNode(gid, predicate, result, [], depth, parent), subst

        key = alpha_key(predicate)
        for i, (ancestor_id, ancestor_key) in enumerate(path):
            if ancestor_key == key:
                cycle = tuple(aid for aid, _ in path[i:]) + (gid,)
                result = EvalResult(MAYBE, Overflow(cycle))
                return GoalNode(gid, predicate, result, [], depth, parent), subst

        if isinstance(predicate, Outlives):
            # Region constraints are assumed satisfiable.
            cand = CandidateNode(
                self.new_id(), OUTLIVES_ASSUMED, subst, [], EvalResult(YES), gid, depth
            )
            return GoalNode(gid, predicate, EvalResult(YES), [cand], depth, parent), subst
        if isinstance(predicate, ProjectionEq):
            return self.eval_projection_eq(predicate, subst, depth, path, gid, parent)
        if isinstance(predicate, TraitBound):
            return self.eval_trait_bound(predicate, subst, depth, path, gid, parent)
        raise TypeError(f"cannot evaluate {predicate!r}")

    def eval_trait_bound(
        self, predicate: TraitBound, subst, depth, path, gid, parent
    ) -> tuple[GoalNode, Substitution]:
        new_path = path + ((gid, alpha_key(predicate)),)
        candidates: list[CandidateNode] = []

        dyn_hit = self.dyn_candidate(predicate, subst, depth, gid)
        if dyn_hit is not None:
            candidates.append(dyn_hit)
        else:
            callable_hit = self.callable_candidate(predicate, subst, depth, gid)
            if callable_hit is not None:
                candidates.append(callable_hit)
            for impl, unifier, binder_map in self.match_impls(predicate, subst):
                candidates.append(
                    self.eval_candidate(impl, unifier, binder_map, depth, new_path, gid)
                )

        return self.finish_goal(gid, predicate, candidates, subst, depth, parent)

    def dyn_candidate(self, predicate, subst, depth, gid) -> Optional[CandidateNode]:
        """``dyn p..: T`` holds outright when T appears among the bounds."""
        if not isinstance(predicate.self_type, Existential):
            return None
        for bound in predicate.self_type.bounds:
            if not isinstance(bound, TraitBound):
                continue
            if bound.instance.trait != predicate.instance.trait:
                continue
            if bound.instance.type_args != predicate.instance.type_args:
                continue
            cand = CandidateNode(
                self.new_id(), DYN_BOUND, subst, [], EvalResult(YES), gid, depth
            )
            cand.out_subst = subst
            return cand
        return None

    def callable_candidate(self, predicate, subst, depth, gid) -> Optional[CandidateNode]:
        """Match a function item against a #[callable(arity=N)] trait.

        The trait's type arguments are unified against the N surface
        parameters followed by the result type.
        """
        decl = self.context.trait_decl(predicate.instance.trait)
        if decl is None or decl.callable_arity is None:
            return None
        sig = function_item_signature(predicate.self_type, self.context)
        if sig is None:
            return None
        params, result = sig
        if len(params) != decl.callable_arity:
            return None
        if len(predicate.instance.type_args) != len(params) + 1:
            return None
        try:
            u = subst
            for trait_arg, part in zip(
                predicate.instance.type_args, [*params, result]
            ):
                u = unify(trait_arg, part, u)
        except UnifyFailure:
            return None
        cand = CandidateNode(
            self.new_id(), FN_ITEM_CALLABLE, u, [], EvalResult(YES), gid, depth
        )
        cand.out_subst = u
        return cand

    def match_impls(self, predicate: TraitBound, subst: Substitution):
        """Impls of the bound's trait whose instantiated head unifies."""
        for impl in self.context.impls_of(predicate.instance.trait):
            binder_map: dict[str, Type] = {
                name: self.fresh_var() for name in impl.params.type_binders
            }
            head_self = _subst_type_vars(impl.self_type, binder_map)
            head_args = [
                _subst_type_vars(a, binder_map) for a in impl.instance.type_args
            ]
            if len(head_args) != len(predicate.instance.type_args):
                continue
            try:
                u = unify(predicate.self_type, head_self, subst)
                for goal_arg, impl_arg in zip(predicate.instance.type_args, head_args):
                    u = unify(goal_arg, impl_arg, u)
            except UnifyFailure:
                continue
            yield impl, u, binder_map

    def eval_candidate(
        self, impl: ImplBlock, unifier: Substitution, binder_map, depth, path, gid
    ) -> CandidateNode:
        cand_id = self.new_id()
        subgoals: list[GoalNode] = []
        current = unifier
        for wc in impl.params.where_clauses:
            wc = _subst_type_vars(wc, binder_map)
            node, out = self.eval_goal(wc, current, depth + 1, path, cand_id)
            subgoals.append(node)
            if node.result.is_yes:
                current = out
        if self.config.dedup_snapshots:
            subgoals = _dedup_snapshots(subgoals)
        result = _combine_subgoals(subgoals)
        cand = CandidateNode(
            cand_id, impl.id, unifier, subgoals, result, gid, depth,
            binder_map=binder_map,
        )
        cand.out_subst = current
        return cand

    def finish_goal(
        self, gid, predicate, candidates, subst, depth, parent
    ) -> tuple[GoalNode, Substitution]:
        out = subst
        if any(c.result.value == YES for c in candidates):
            result = EvalResult(YES)
            winner = next(c for c in candidates if c.result.value == YES)
            out = winner.out_subst if winner.out_subst is not None else subst
        elif any(c.result.value == MAYBE for c in candidates):
            first = next(c for c in candidates if c.result.value == MAYBE)
            result = EvalResult(MAYBE, first.result.reason)
        elif candidates:
            result = EvalResult(NO)
        else:
            vs = infer_vars(predicate)
            if vs:
                result = EvalResult(MAYBE, Ambiguous(tuple(vs)))
            else:
                result = EvalResult(NO, NoCandidates())
        return GoalNode(gid, predicate, result, candidates, depth, parent), out

    # -- projections

    def eval_projection_eq(
        self, predicate: ProjectionEq, subst, depth, path, gid, parent
    ) -> tuple[GoalNode, Substitution]:
        if ProjectionType(predicate.projection) == predicate.rhs:
            cand = CandidateNode(
                self.new_id(), PROJECTION_NORMALIZE, subst, [], EvalResult(YES),
                gid, depth,
            )
            node = GoalNode(gid, predicate, EvalResult(YES), [cand], depth, parent)
            return node, subst

        new_path = path + ((gid, alpha_key(predicate)),)
        cand_id = self.new_id()
        normalized, evidence, nsubst, status = self.normalize(
            predicate.projection, subst, depth + 1, new_path, cand_id
        )

        if isinstance(normalized, Unresolved):
            if status == "overflow":
                # A self-referential associated binding: the chain of
                # normalizations revisits the same projection.
                result = EvalResult(MAYBE, Overflow((gid,)))
                return GoalNode(gid, predicate, result, [], depth, parent), subst
            if status == "ambiguous":
                # The trait bound held through several impls at once, so no
                # single associated binding can be substituted; the evidence
                # subtree is consumed statefully and not attached.
                result = EvalResult(
                    MAYBE, Ambiguous(tuple(infer_vars(predicate)))
                )
                return GoalNode(gid, predicate, result, [], depth, parent), subst
            cand_result = _combine_subgoals(evidence)
            cand = CandidateNode(
                cand_id, PROJECTION_NORMALIZE, subst, evidence, cand_result, gid, depth
            )
            node = GoalNode(gid, predicate, cand_result, [cand], depth, parent)
            return node, subst

        # Final unification of the normalized type against the right side;
        # a stateful check node, never re-dispatched through the solver.
        check_id = self.new_id()
        try:
            u = unify(normalized, predicate.rhs, nsubst)
            check_result = EvalResult(YES)
            check_cand = CandidateNode(
                self.new_id(), TYPE_EQUALITY, u, [], EvalResult(YES), check_id, depth + 1
            )
            check = GoalNode(
                check_id, u.apply(predicate), check_result, [check_cand],
                depth + 1, cand_id,
            )
            subgoals = evidence + [check]
            cand = CandidateNode(
                cand_id, PROJECTION_NORMALIZE, nsubst, subgoals,
                _combine_subgoals(subgoals), gid, depth,
            )
            cand.out_subst = u
            node = GoalNode(gid, predicate, cand.result, [cand], depth, parent)
            return node, (u if cand.result.is_yes else subst)
        except UnifyFailure:
            check = GoalNode(
                check_id, nsubst.apply(predicate),
                EvalResult(NO, NoCandidates()), [], depth + 1, cand_id,
            )
            subgoals = evidence + [check]
            cand = CandidateNode(
                cand_id, PROJECTION_NORMALIZE, nsubst, subgoals,
                _combine_subgoals(subgoals), gid, depth,
            )
            node = GoalNode(gid, predicate, cand.result, [cand], depth, parent)
            return node, subst

    def normalize(
        self, projection: Projection, subst, depth, path, parent_cand,
        chain: tuple = (),
    ) -> tuple[Union[Type, Unresolved], list[GoalNode], Substitution, str]:
        """Resolve a projection through its unique successful impl.

        Returns (type-or-UNRESOLVED, evidence subtrees, substitution,
        status) with status one of "ok", "ambiguous", "overflow".
        Normalization is unidirectional: it may bind inference variables
        but never inspects the equality's right side.  The chain of
        projections being normalized is tracked so that an associated
        binding defined in terms of itself overflows instead of diverging.
        """
        projection = subst.apply(projection)
        key = alpha_key(projection)
        if key in chain or len(chain) > self.config.max_depth:
            return UNRESOLVED, [], subst, "overflow"
        chain = chain + (key,)
        bound = TraitBound(projection.self_type, projection.instance)
        node, nsubst = self.eval_goal(bound, subst, depth, path, parent_cand)
        if node.result.value != YES:
            return UNRESOLVED, [node], subst, "ok"
        yes = [c for c in node.candidates if c.result.value == YES]
        if len(yes) != 1 or not isinstance(yes[0].impl_ref, int):
            return UNRESOLVED, [node], nsubst, "ambiguous"
        winner = yes[0]
        impl = self.context.impl_by_id(winner.impl_ref)
        binding = next(
            (b for b in impl.assoc_bindings if b.name == projection.assoc), None
        )
        if binding is None:
            return UNRESOLVED, [node], nsubst, "ambiguous"
        mapping = dict(winner.binder_map)
        for name, arg in zip(binding.params.type_binders, projection.type_args):
            mapping[name] = arg
        out_subst = winner.out_subst if winner.out_subst is not None else nsubst
        value = _subst_type_vars(binding.value, mapping)
        value = out_subst.apply(value)
        if isinstance(value, ProjectionType):
            inner, more, fsubst, status = self.normalize(
                value.projection, out_subst, depth, path, parent_cand, chain
            )
            return inner, [node] + more, fsubst, status
        return value, [node], out_subst, "ok"


def _combine_subgoals(subgoals: list[GoalNode]) -> EvalResult:
    if all(g.result.value == YES for g in subgoals):
        return EvalResult(YES)
    if any(g.result.value == NO for g in subgoals):
        return EvalResult(NO)
    first = next(g for g in subgoals if g.result.value == MAYBE)
    return EvalResult(MAYBE, first.result.reason)


def _dedup_snapshots(subgoals: list[GoalNode]) -> list[GoalNode]:
    """Keep only the latest of sibling goals with alpha-equivalent
    predicates; earlier ones are stale snapshots of the same obligation."""
    keep: dict[object, GoalNode] = {}
    for node in subgoals:
        keep[_hashable_key(node.predicate)] = node
    return sorted(keep.values(), key=lambda n: n.id)


def _hashable_key(predicate: Predicate):
    return alpha_key(predicate)


# ---------------------------------------------------------------------------
# Public operations


def solve(
    context: Context, predicate: Predicate, config: Optional[SolveConfig] = None,
    id_start: int = 0,
) -> GoalNode:
    """Evaluate ``predicate`` against ``context`` into a full inference tree.

    Pure and deterministic: node ids are assigned in preorder starting at
    ``id_start``, and every candidate is explored.
    """
    solver = Solver(context, config or SolveConfig(), id_start=id_start)
    return solver.solve(predicate)


def evaluate_predicate_kind(
    context: Context, predicate: Predicate, config: Optional[SolveConfig] = None
) -> GoalNode:
    """Dispatch on the predicate kind and evaluate it (same tree as solve)."""
    return solve(context, predicate, config)


def assemble_candidates(
    context: Context, bound: TraitBound
) -> list[tuple[int, Substitution]]:
    """Every impl of the bound's trait whose head unifies, in declaration
    order, with the unifying substitution (impl binders freshened)."""
    solver = Solver(context, SolveConfig())
    solver.next_fresh = max(infer_vars(bound), default=-1) + 1
    return [
        (impl.id, unifier)
        for impl, unifier, _ in solver.match_impls(bound, Substitution.empty())
    ]


def normalize_projection(
    context: Context, projection: Projection, config: Optional[SolveConfig] = None
) -> tuple[Union[Type, Unresolved], GoalNode]:
    """Normalize a projection; returns the type (or UNRESOLVED) plus the
    evidence tree for the underlying trait bound."""
    solver = Solver(context, config or SolveConfig())
    solver.next_fresh = max(infer_vars(projection), default=-1) + 1
    value, evidence, _, _ = solver.normalize(
        projection, Substitution.empty(), 0, (), None
    )
    return value, evidence[0]


# ---------------------------------------------------------------------------
# Tree utilities


def iter_goals(root: GoalNode):
    yield root
    for cand in root.candidates:
        for sub in cand.subgoals:
            yield from iter_goals(sub)


def iter_nodes(root: GoalNode):
    yield root
    for cand in root.candidates:
        yield cand
        for sub in cand.subgoals:
            yield from iter_nodes(sub)


def tree_size(root: GoalNode) -> int:
    return sum(1 for _ in iter_nodes(root))


def node_index(root: GoalNode) -> dict[int, Union[GoalNode, CandidateNode]]:
    return {node.id: node for node in iter_nodes(root)}


def validate_tree(root: GoalNode) -> list[str]:
    """Check the And-Or result invariants over a whole tree.

    Returns a list of violations; empty means consistent.
    """
    problems: list[str] = []
    index = node_index(root)
    ids = [node.id for node in iter_nodes(root)]
    if len(ids) != len(set(ids)):
        problems.append("duplicate node ids")

    for node in iter_nodes(root):
        if isinstance(node, CandidateNode):
            values = [g.result.value for g in node.subgoals]
            if node.result.value == YES and not all(v == YES for v in values):
                problems.append(f"candidate {node.id}: yes with failing subgoal")
            if node.result.value != YES and values and all(v == YES for v in values):
                problems.append(f"candidate {node.id}: all subgoals yes but not yes")
            if node.result.value == NO and NO not in values:
                problems.append(f"candidate {node.id}: no without a no subgoal")
            if node.result.value == MAYBE and (NO in values or MAYBE not in values):
                problems.append(f"candidate {node.id}: inconsistent maybe")
            for sub in node.subgoals:
                if sub.id <= node.id:
                    problems.append(f"node ids not topologically ordered at {sub.id}")
                if sub.parent != node.id:
                    problems.append(f"goal {sub.id}: wrong parent link")
            continue

        values = [c.result.value for c in node.candidates]
        if node.result.value == YES:
            if node.result.reason is not None:
                problems.append(f"goal {node.id}: yes with a reason")
            if node.candidates and YES not in values:
                problems.append(f"goal {node.id}: yes without yes candidate")
        elif YES in values:
            problems.append(f"goal {node.id}: failing despite yes candidate")
        if node.result.value == NO:
            if node.candidates and not all(v == NO for v in values):
                problems.append(f"goal {node.id}: no with non-no candidate")
            if not node.candidates and not isinstance(node.result.reason, NoCandidates):
                problems.append(f"goal {node.id}: childless no lacks NoCandidates")
        if node.result.value == MAYBE:
            ok = (MAYBE in values and YES not in values) or isinstance(
                node.result.reason, (Ambiguous, Overflow)
            )
            if not ok:
                problems.append(f"goal {node.id}: unjustified maybe")
        if isinstance(node.result.reason, Overflow):
            cycle = node.result.reason.cycle_path
            first = index.get(cycle[0]) if cycle else None
            last = index.get(cycle[-1]) if cycle else None
            if not isinstance(first, GoalNode) or not isinstance(last, GoalNode):
                problems.append(f"goal {node.id}: cycle path has unresolvable ids")
            elif alpha_key(first.predicate) != alpha_key(last.predicate):
                problems.append(
                    f"goal {node.id}: cycle endpoints not alpha-equivalent"
                )
        for cand in node.candidates:
            if cand.id <= node.id:
                problems.append(f"node ids not topologically ordered at {cand.id}")
            if cand.parent != node.id:
                problems.append(f"candidate {cand.id}: wrong parent link")
    return problems
