"""Bottom-up and top-down projections over an inference tree.

Views are id-based descriptors over the immutable tree: the renderer and
the web client fetch node payloads lazily rather than copying subtrees.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import CandidateNode, GoalNode, YES, iter_goals, iter_nodes, node_index

FAILURES_ONLY = "failures_only"
ALL = "all"


@dataclass(frozen=True)
class BottomUpEntry:
    leaf: int
    ancestor_chain: tuple[int, ...]  # parent candidate first, root goal last


@dataclass(frozen=True)
class BottomUpView:
    entries: tuple[BottomUpEntry, ...]
    ranking: "Ranking"  # noqa: F821 - ranking order defines entry order


@dataclass(frozen=True)
class TopDownView:
    root: int
    visible_filter: str  # FAILURES_ONLY | ALL


def failed_leaves(tree: GoalNode) -> set[int]:
    """Goals that fail with nothing failing beneath them.

    Overflow-cut and ambiguous goals count: they have no candidates and
    at fixpoint end every unproven predicate is a failure.
    """
    leaves: set[int] = set()
    for goal in iter_goals(tree):
        if goal.result.value == YES:
            continue
        if any(
            sub.result.value != YES
            for cand in goal.candidates
            for sub in cand.subgoals
        ):
            continue
        leaves.add(goal.id)
    return leaves


def ancestor_chain(tree: GoalNode, leaf_id: int) -> tuple[int, ...]:
    """Alternating candidate/goal ids from the leaf's parent candidate up
    to the root goal; empty when the leaf is the root."""
    index = node_index(tree)
    chain: list[int] = []
    node = index[leaf_id]
    while node.parent is not None:
        chain.append(node.parent)
        node = index[node.parent]
    return tuple(chain)


def bottom_up(tree: GoalNode, ranking) -> BottomUpView:
    """Failing leaves in ranking order, each with its full parent chain
    (every intermediate bound present, nothing elided)."""
    entries = tuple(
        BottomUpEntry(leaf, ancestor_chain(tree, leaf)) for leaf in ranking.ids()
    )
    return BottomUpView(entries, ranking)


def top_down(tree: GoalNode, visible_filter: str = FAILURES_ONLY) -> TopDownView:
    if visible_filter not in (FAILURES_ONLY, ALL):
        raise ValueError(f"unknown filter {visible_filter!r}")
    return TopDownView(tree.id, visible_filter)


def visible_ids(tree: GoalNode, view: TopDownView) -> set[int]:
    """Node ids exposed by a top-down view."""
    if view.visible_filter == ALL:
        return {node.id for node in iter_nodes(tree)}
    index = node_index(tree)
    visible = {tree.id}
    for node in iter_nodes(tree):
        if node.result.value == YES:
            continue
        visible.add(node.id)
        cursor = node
        while cursor.parent is not None:
            visible.add(cursor.parent)
            cursor = index[cursor.parent]
    return visible
