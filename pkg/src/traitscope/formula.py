"""And-Or trees as propositional formulas, and exact DNF normalization.

Goals map to Or over their candidates, candidates to And over their
subgoals; successful subtrees simplify to True and failing leaves become
variables named by goal node id.  A satisfying assignment of the formula
is a set of failing predicates that, were they to hold, would make the
root obligation hold.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import GoalNode, YES


@dataclass(frozen=True)
class Var:
    goal_id: int


@dataclass(frozen=True)
class TrueF:
    pass


@dataclass(frozen=True)
class FalseF:
    pass


@dataclass(frozen=True)
class And:
    items: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    items: tuple["Formula", ...]


Formula = object  # Var | TrueF | FalseF | And | Or

TRUE = TrueF()
FALSE = FalseF()


def mk_and(items) -> Formula:
    flat = [i for i in items if i != TRUE]
    if any(i == FALSE for i in flat):
        return FALSE
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def mk_or(items) -> Formula:
    flat = [i for i in items if i != FALSE]
    if any(i == TRUE for i in flat):
        return TRUE
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def to_formula(tree: GoalNode) -> Formula:
    """Propositional formula of a tree; True when the root already holds."""
    if tree.result.value == YES:
        return TRUE
    if not tree.candidates:
        return Var(tree.id)
    return mk_or(
        mk_and(to_formula(sub) for sub in cand.subgoals)
        for cand in tree.candidates
    )


def dnf_normalize(formula: Formula) -> list[frozenset[int]]:
    """Exact disjunctive normal form as a list of conjunct id-sets.

    Distribution is performed exactly (no approximation); duplicate
    conjuncts are removed, first occurrence kept.
    """
    conjuncts = _dnf(formula)
    seen: list[frozenset[int]] = []
    known: set[frozenset[int]] = set()
    for c in conjuncts:
        if c not in known:
            known.add(c)
            seen.append(c)
    return seen


def _dnf(formula: Formula) -> list[frozenset[int]]:
    if isinstance(formula, Var):
        return [frozenset((formula.goal_id,))]
    if formula == TRUE:
        return [frozenset()]
    if formula == FALSE:
        return []
    if isinstance(formula, Or):
        out: list[frozenset[int]] = []
        for item in formula.items:
            out.extend(_dnf(item))
        return out
    if isinstance(formula, And):
        acc: list[frozenset[int]] = [frozenset()]
        for item in formula.items:
            branches = _dnf(item)
            acc = [a | b for a in acc for b in branches]
        return acc
    raise TypeError(f"not a formula: {formula!r}")


def evaluate(formula: Formula, true_vars: frozenset[int] | set[int]) -> bool:
    """Evaluate under an assignment that sets exactly ``true_vars`` true."""
    if isinstance(formula, Var):
        return formula.goal_id in true_vars
    if formula == TRUE:
        return True
    if formula == FALSE:
        return False
    if isinstance(formula, And):
        return all(evaluate(i, true_vars) for i in formula.items)
    if isinstance(formula, Or):
        return any(evaluate(i, true_vars) for i in formula.items)
    raise TypeError(f"not a formula: {formula!r}")


def formula_vars(formula: Formula) -> set[int]:
    if isinstance(formula, Var):
        return {formula.goal_id}
    if isinstance(formula, (TrueF, FalseF)):
        return set()
    return set().union(*(formula_vars(i) for i in formula.items))
