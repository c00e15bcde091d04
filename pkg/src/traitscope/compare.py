"""Heuristic comparison harness.

Measures, per program, how far each localization method lands from a
manually identified root-cause predicate: ranking methods score by index
in their ordering, the emulated compiler diagnostic by tree distance from
the node where it stops reporting.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .engine import (
    GoalNode,
    SolveConfig,
    YES,
    node_index,
    solve,
    tree_size,
)
from .formula import dnf_normalize, to_formula
from .printer import FULLY_QUALIFIED, SHORTENED, pretty_print
from .ranking import HEURISTICS, rank
from .syntax import Context
from .views import failed_leaves

EMULATED_COMPILER = "emulated_compiler"
METHODS = (*HEURISTICS, EMULATED_COMPILER)


class GroundTruthError(Exception):
    """Ground truth matched zero or several failing leaves."""

    def __init__(self, message: str, candidates: list[str], kind: str = "other"):
        if candidates:
            message += "; failing leaves: " + "; ".join(candidates)
        super().__init__(message)
        self.candidates = candidates
        self.kind = kind


def emulate_compiler_report(tree: GoalNode) -> int:
    """Walk down single failing branches and stop at the first branch
    point, as a compiler restricted to a linear diagnostic would."""
    goal = tree
    while True:
        failing = [c for c in goal.candidates if c.result.value != YES]
        if len(failing) != 1:
            return goal.id
        failing_subs = [s for s in failing[0].subgoals if s.result.value != YES]
        if not failing_subs:
            return goal.id
        goal = min(failing_subs, key=lambda s: s.id)


def goal_distance(tree: GoalNode, from_id: int, to_id: int) -> int:
    """Number of goal nodes on the tree path between two nodes, not
    counting the starting node; 0 when they are the same node."""
    if from_id == to_id:
        return 0
    index = node_index(tree)

    def chain(node_id: int) -> list[int]:
        out = [node_id]
        node = index[node_id]
        while node.parent is not None:
            out.append(node.parent)
            node = index[node.parent]
        return out

    from_chain = chain(from_id)
    to_chain = chain(to_id)
    from_set = set(from_chain)
    lca = next(nid for nid in to_chain if nid in from_set)
    path = from_chain[: from_chain.index(lca) + 1]
    path += list(reversed(to_chain[: to_chain.index(lca)]))
    return sum(
        1
        for nid in path
        if nid != from_id and isinstance(index[nid], GoalNode)
    )


def find_ground_truth_leaf(context: Context, tree: GoalNode, text: str) -> int:
    """The unique failing leaf whose pretty-printed predicate matches."""
    index = node_index(tree)
    matches = []
    printed = []
    for leaf_id in sorted(failed_leaves(tree)):
        node = index[leaf_id]
        short = pretty_print(node.predicate, SHORTENED, context)
        qualified = pretty_print(node.predicate, FULLY_QUALIFIED, context)
        printed.append(qualified)
        if text in (short, qualified):
            matches.append(leaf_id)
    if not matches:
        raise GroundTruthError(
            f"ground truth {text!r} matches no failing leaf", printed, "unmatched"
        )
    if len(matches) > 1:
        raise GroundTruthError(
            f"ground truth {text!r} is ambiguous ({len(matches)} leaves)",
            printed,
            "ambiguous",
        )
    return matches[0]


@dataclass
class ProgramComparison:
    program: str
    distances: dict[str, int] = field(default_factory=dict)
    dnf_time_ms: float = 0.0
    tree_size: int = 0


@dataclass
class ComparisonReport:
    programs: list[ProgramComparison] = field(default_factory=list)

    def median(self, method: str) -> float:
        import statistics

        return statistics.median(p.distances[method] for p in self.programs)

    def as_dict(self) -> dict:
        return {
            "programs": [
                {
                    "program": p.program,
                    "distances": p.distances,
                    "dnf_time_ms": round(p.dnf_time_ms, 4),
                    "tree_size": p.tree_size,
                }
                for p in self.programs
            ],
            "medians": {m: self.median(m) for m in METHODS},
        }


def compare_program(
    context: Context,
    truth_text: str,
    program: str,
    config: SolveConfig | None = None,
) -> ProgramComparison:
    """Run every method against one program's failing goals."""
    config = config or SolveConfig()
    trees = [solve(context, g.predicate, config) for g in context.goals]
    failing = [t for t in trees if t.result.value != YES]
    if not failing:
        raise GroundTruthError(f"{program}: no failing goal to compare", [])

    located = []
    near_misses: list[str] = []
    for tree in failing:
        try:
            located.append((tree, find_ground_truth_leaf(context, tree, truth_text)))
        except GroundTruthError as err:
            if err.kind == "ambiguous":
                raise
            near_misses.extend(err.candidates)
    if len(located) != 1:
        raise GroundTruthError(
            f"{program}: ground truth {truth_text!r} must match exactly one "
            f"failing leaf across goals ({len(located)} matched)",
            near_misses,
            "unmatched" if not located else "ambiguous",
        )
    tree, truth_id = located[0]

    entry = ProgramComparison(program)
    start = time.perf_counter()
    conjuncts = dnf_normalize(to_formula(tree))
    entry.dnf_time_ms = (time.perf_counter() - start) * 1000.0
    del conjuncts
    entry.tree_size = tree_size(tree)

    for heuristic in HEURISTICS:
        ranking = rank(tree, context, heuristic)
        entry.distances[heuristic] = ranking.index_of(truth_id)
    halt = emulate_compiler_report(tree)
    entry.distances[EMULATED_COMPILER] = goal_distance(tree, halt, truth_id)
    return entry
