"""Command-line entry point.

Subcommands: ``check``, ``tree``, ``rank``, ``compare``, ``serve``.  The
CLI is a thin layer over the core package; ``serve`` hands off to the
FastAPI app.  TRAITSCOPE_MAX_DEPTH overrides the solver depth bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .compare import (
    ComparisonReport,
    GroundTruthError,
    METHODS,
    compare_program,
)
from .document import build_document, document_to_json
from .engine import (
    BuiltIn,
    CandidateNode,
    GoalNode,
    Overflow,
    SolveConfig,
    YES,
    node_index,
    solve,
)
from .parser import ParseError, parse_context
from .printer import SHORTENED, pretty_print
from .ranking import DEPTH, INERTIA, INFER_VARS, rank
from .syntax import Context
from .views import bottom_up
from .wellformed import check_well_formed

GLYPHS = {"yes": "✓", "no": "✗", "maybe": "?"}


def solve_config() -> SolveConfig:
    depth = os.environ.get("TRAITSCOPE_MAX_DEPTH")
    if depth:
        return SolveConfig(max_depth=int(depth))
    return SolveConfig()


def load_context(path: str) -> Context:
    with open(path, encoding="utf-8") as handle:
        source = handle.read()
    context = parse_context(source, filename=path)
    diagnostics = check_well_formed(context)
    if diagnostics:
        for diag in diagnostics:
            print(
                f"{diag.span.file}:{diag.span.line_start}: {diag.message}",
                file=sys.stderr,
            )
        raise SystemExit(2)
    return context


def cmd_check(args) -> int:
    context = load_context(args.file)
    config = solve_config()
    all_yes = True
    for goal in context.goals:
        tree = solve(context, goal.predicate, config)
        print(f"goal {goal.label}: {tree.result.value}")
        if tree.result.value != YES:
            all_yes = False
            ranking = rank(tree, context, INERTIA)
            view = bottom_up(tree, ranking)
            if view.entries:
                print("  most likely root causes:")
            index = node_index(tree)
            for entry in view.entries[:3]:
                leaf = index[entry.leaf]
                print(f"    {pretty_print(leaf.predicate, SHORTENED, context)}")
    if all_yes:
        print("all goals hold")
        return 0
    return 1


def render_tree_text(tree: GoalNode, context: Context) -> str:
    lines: list[str] = []

    def visit(node, indent: int):
        pad = "  " * indent
        if isinstance(node, CandidateNode):
            if isinstance(node.impl_ref, BuiltIn):
                label = f"[{node.impl_ref.kind.replace('_', ' ')}]"
            else:
                impl = context.impl_by_id(node.impl_ref)
                label = (
                    f"impl {pretty_print(impl.instance, SHORTENED, context)} "
                    f"for {pretty_print(impl.self_type, SHORTENED, context)}"
                )
            lines.append(f"{pad}{GLYPHS[node.result.value]} {label}")
            for sub in node.subgoals:
                visit(sub, indent + 1)
            return
        text = pretty_print(node.predicate, SHORTENED, context)
        note = ""
        if isinstance(node.result.reason, Overflow):
            note = f"  (overflow, cycle of {len(node.result.reason.cycle_path)} goals)"
        lines.append(f"{pad}{GLYPHS[node.result.value]} {text}{note}")
        for cand in node.candidates:
            visit(cand, indent + 1)

    visit(tree, 0)
    return "\n".join(lines) + "\n"


def cmd_tree(args) -> int:
    context = load_context(args.file)
    config = solve_config()
    goal = context.goal_by_label(args.goal)
    if goal is None:
        print(f"unknown goal label {args.goal!r}", file=sys.stderr)
        return 2
    if args.format == "json":
        document = build_document(context, config, labels=[args.goal])
        sys.stdout.write(document_to_json(document))
    else:
        tree = solve(context, goal.predicate, config)
        sys.stdout.write(render_tree_text(tree, context))
    return 0


HEURISTIC_NAMES = {"inertia": INERTIA, "depth": DEPTH, "vars": INFER_VARS}


def cmd_rank(args) -> int:
    context = load_context(args.file)
    goal = context.goal_by_label(args.goal)
    if goal is None:
        print(f"unknown goal label {args.goal!r}", file=sys.stderr)
        return 2
    tree = solve(context, goal.predicate, solve_config())
    index = node_index(tree)
    ranking = rank(tree, context, HEURISTIC_NAMES[args.heuristic])
    for gid, key in ranking.entries:
        leaf = index[gid]
        print(f"{key:6d}  {pretty_print(leaf.predicate, SHORTENED, context)}")
    return 0


def cmd_compare(args) -> int:
    with open(args.ground_truth_map, encoding="utf-8") as handle:
        truth_map = json.load(handle)
    config = solve_config()
    report = ComparisonReport()
    for path in args.files:
        name = os.path.basename(path)
        truth = truth_map.get(name, truth_map.get(path))
        if truth is None:
            print(f"no ground truth for {name!r}", file=sys.stderr)
            return 2
        context = load_context(path)
        try:
            report.programs.append(compare_program(context, truth, name, config))
        except GroundTruthError as err:
            print(f"{name}: {err}", file=sys.stderr)
            return 2
    if args.format == "json":
        print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
        return 0
    headers = ["program", *METHODS, "dnf_ms", "nodes"]
    rows = [
        [
            p.program,
            *(str(p.distances[m]) for m in METHODS),
            f"{p.dnf_time_ms:.3f}",
            str(p.tree_size),
        ]
        for p in report.programs
    ]
    rows.append(
        ["median", *(str(report.median(m)) for m in METHODS), "", ""]
    )
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    print("  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)))
    for row in rows:
        print("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    try:
        app = create_app(args.file, solve_config())
    except (ParseError, FileNotFoundError, ValueError) as err:
        print(str(err), file=sys.stderr)
        return 2
    try:
        uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    except SystemExit:
        raise
    except OSError as err:
        print(f"cannot bind port {args.port}: {err}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="traitscope",
        description="Trait-bound inference trees, root-cause ranking, and an "
        "interactive debugger.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="solve every goal and summarize failures")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tree", help="print one goal's full inference tree")
    p.add_argument("file")
    p.add_argument("--goal", required=True)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("rank", help="rank failing predicates for one goal")
    p.add_argument("file")
    p.add_argument("--goal", required=True)
    p.add_argument(
        "--heuristic", choices=sorted(HEURISTIC_NAMES), default="inertia"
    )
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("compare", help="compare localization methods")
    p.add_argument("files", nargs="+")
    p.add_argument("--ground-truth-map", required=True)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="serve the debugger UI over HTTP")
    p.add_argument("file")
    p.add_argument("--port", type=int, default=8377)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(str(err), file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print(str(err), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
