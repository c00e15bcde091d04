import sys
from dataclasses import dataclass
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from traitscope.engine import GoalNode, node_index, solve
from traitscope.parser import parse_context
from traitscope.printer import FULLY_QUALIFIED, SHORTENED, pretty_print
from traitscope.syntax import Context

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

FIXTURE_NAMES = ["bevy", "diesel", "ast", "space", "brew", "axum"]


@dataclass
class Solved:
    context: Context
    tree: GoalNode
    index: dict

    def leaf_by_short(self, text: str) -> GoalNode:
        from traitscope.views import failed_leaves

        for lid in sorted(failed_leaves(self.tree)):
            node = self.index[lid]
            if pretty_print(node.predicate, SHORTENED, self.context) == text:
                return node
        raise KeyError(text)

    def goal_by_short(self, text: str) -> GoalNode:
        from traitscope.engine import iter_goals

        for goal in iter_goals(self.tree):
            if pretty_print(goal.predicate, SHORTENED, self.context) == text:
                return goal
        raise KeyError(text)


def load_fixture(name: str) -> Context:
    source = (FIXTURES / f"{name}.tl").read_text()
    return parse_context(source, filename=f"{name}.tl")


def solve_fixture(name: str, label: str | None = None) -> Solved:
    context = load_fixture(name)
    goal = context.goals[0] if label is None else context.goal_by_label(label)
    tree = solve(context, goal.predicate)
    return Solved(context, tree, node_index(tree))


@pytest.fixture(scope="session")
def bevy() -> Solved:
    return solve_fixture("bevy")


@pytest.fixture(scope="session")
def diesel() -> Solved:
    return solve_fixture("diesel")


@pytest.fixture(scope="session")
def ast_fixture() -> Solved:
    return solve_fixture("ast")


@pytest.fixture(scope="session")
def space() -> Solved:
    return solve_fixture("space")


@pytest.fixture(scope="session")
def brew() -> Solved:
    return solve_fixture("brew")


@pytest.fixture(scope="session")
def axum() -> Solved:
    return solve_fixture("axum")
