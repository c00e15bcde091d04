"""traitscope: a trait-bound inference engine with And-Or inference trees,
root-cause ranking of failed obligations, and an interactive debugger."""

from .document import build_document, document_from_json, document_to_json
from .engine import (
    SolveConfig,
    assemble_candidates,
    evaluate_predicate_kind,
    normalize_projection,
    solve,
)
from .parser import ParseError, parse_context
from .printer import FULLY_QUALIFIED, SHORTENED, pretty_print, render
from .ranking import classify_goal, minimum_correction_sets, rank, weight
from .unify import Substitution, UnifyFailure, apply_subst, unify
from .views import bottom_up, failed_leaves, top_down
from .wellformed import check_well_formed

__version__ = "0.1.0"

__all__ = [
    "FULLY_QUALIFIED",
    "ParseError",
    "SHORTENED",
    "SolveConfig",
    "Substitution",
    "UnifyFailure",
    "apply_subst",
    "assemble_candidates",
    "bottom_up",
    "build_document",
    "check_well_formed",
    "classify_goal",
    "document_from_json",
    "document_to_json",
    "evaluate_predicate_kind",
    "failed_leaves",
    "minimum_correction_sets",
    "normalize_projection",
    "parse_context",
    "pretty_print",
    "rank",
    "render",
    "solve",
    "top_down",
    "unify",
    "weight",
]
