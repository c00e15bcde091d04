"""Independent oracles the engine and ranker are checked against.

These work on their own plain-tuple program representation and never
import the solver, so they stay an independent route to the same answers:
a brute-force impl-choice evaluator, a one-way pattern matcher, and an
exhaustive minimal-correction-set enumerator.
"""

from __future__ import annotations

from itertools import chain, combinations

YES = "yes"
NO = "no"
MAYBE = "maybe"

# Ground types are tuples: ("N0",), ("W1", inner).  In impl patterns the
# single binder is the leaf ("$",).


def is_ground(t) -> bool:
    if t == ("$",):
        return False
    return all(is_ground(a) for a in t[1:])


def match_pattern(pattern, ground):
    """One-way match binding the ``$`` leaf; None if no match."""
    binding = []

    def walk(p, g):
        if p == ("$",):
            if binding and binding[0] != g:
                return False
            if not binding:
                binding.append(g)
            return True
        if p[0] != g[0] or len(p) != len(g):
            return False
        return all(walk(a, b) for a, b in zip(p[1:], g[1:]))

    if not walk(pattern, ground):
        return None
    return binding[0] if binding else ("$unused",)


def instantiate(pattern, value):
    if pattern == ("$",):
        return value
    return (pattern[0], *(instantiate(a, value) for a in pattern[1:]))


def oracle_solve(impls, goal_trait, goal_type, max_depth) -> str:
    """Exhaustively evaluate a ground trait bound over impl choices.

    ``impls`` is a list of (trait, head_pattern, [(self_pattern, trait)])
    tuples.  Result mirrors the And-Or semantics: a bound holds if some
    impl's head matches and all of its instantiated requirements hold;
    repeats on the path and depth overruns are indeterminate.
    """

    def eval_bound(trait, ty, path, depth):
        if depth > max_depth:
            return MAYBE
        key = (trait, ty)
        if key in path:
            return MAYBE
        results = []
        for impl_trait, head, wheres in impls:
            if impl_trait != trait:
                continue
            bound = match_pattern(head, ty)
            if bound is None:
                continue
            sub_results = [
                eval_bound(w_trait, instantiate(w_self, bound), path | {key}, depth + 1)
                for w_self, w_trait in wheres
            ]
            if all(r == YES for r in sub_results):
                results.append(YES)
            elif any(r == NO for r in sub_results):
                results.append(NO)
            else:
                results.append(MAYBE)
        if YES in results:
            return YES
        if MAYBE in results:
            return MAYBE
        return NO

    return eval_bound(goal_trait, goal_type, frozenset(), 0)


# ---------------------------------------------------------------------------
# Propositional formulas: ("var", id) | ("and", ...) | ("or", ...)


def eval_tuple_formula(formula, true_vars) -> bool:
    tag = formula[0]
    if tag == "var":
        return formula[1] in true_vars
    if tag == "and":
        return all(eval_tuple_formula(f, true_vars) for f in formula[1:])
    if tag == "or":
        return any(eval_tuple_formula(f, true_vars) for f in formula[1:])
    raise ValueError(formula)


def tuple_formula_vars(formula) -> set:
    if formula[0] == "var":
        return {formula[1]}
    return set().union(*(tuple_formula_vars(f) for f in formula[1:]))


def enumerate_minimal_hitting_sets(evaluate, variables) -> set[frozenset]:
    """All subset-minimal variable sets whose all-true assignment satisfies
    ``evaluate``; brute force over the powerset."""
    variables = sorted(variables)
    satisfying = [
        frozenset(s)
        for s in chain.from_iterable(
            combinations(variables, k) for k in range(len(variables) + 1)
        )
        if evaluate(frozenset(s))
    ]
    return {
        s for s in satisfying if not any(other < s for other in satisfying)
    }
