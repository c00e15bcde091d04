"""Command-line behavior: exit codes and printed output."""

import json

import pytest

from conftest import FIXTURES
from traitscope.cli import main


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    def test_failing_fixture_exits_1_and_names_top_cause(self, capsys):
        code, out, _ = run_cli(capsys, "check", FIXTURES / "bevy.tl")
        assert code == 1
        lines = [line.strip() for line in out.splitlines()]
        assert "goal main: no" in lines
        causes = [l for l in lines if l and not l.startswith(("goal", "most"))]
        assert causes[0] == "Timer: SystemParam"

    def test_satisfiable_fixture_exits_0(self, capsys):
        code, out, _ = run_cli(capsys, "check", FIXTURES / "hello.tl")
        assert code == 0
        assert "all goals hold" in out

    def test_syntax_error_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.tl"
        bad.write_text("newtype = ;")
        code, _, err = run_cli(capsys, "check", bad)
        assert code == 2
        assert err.strip()

    def test_well_formedness_error_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "wf.tl"
        bad.write_text("trait Tr<A, B>; newtype N = unit; goal g: N: Tr<N>;")
        with pytest.raises(SystemExit) as exc:
            run_cli(capsys, "check", bad)
        assert exc.value.code == 2


class TestTree:
    def test_text_rendering_shows_cycle_lines_in_order(self, capsys):
        code, out, _ = run_cli(
            capsys, "tree", FIXTURES / "ast.tl", "--goal", "stmt"
        )
        assert code == 0
        lines = [l.strip() for l in out.splitlines() if l.strip()]
        goal_lines = [l for l in lines if "AstAssocs" in l or "AssocData" in l]
        assert "EmptyNode: AstAssocs" in goal_lines[0]
        chain = [l for l in goal_lines if not l.startswith(("?", "✓", "✗"))]
        texts = [l.lstrip("?✓✗ ").split("  ")[0] for l in goal_lines]
        assert texts[0] == "EmptyNode: AstAssocs"
        assert any(t.startswith("EmptyNode: AssocData") for t in texts)
        assert texts[-1] == "EmptyNode: AstAssocs"

    def test_json_format_emits_document(self, capsys):
        code, out, _ = run_cli(
            capsys, "tree", FIXTURES / "bevy.tl", "--goal", "main",
            "--format", "json",
        )
        assert code == 0
        document = json.loads(out)
        assert document["schema_version"] == "1"
        assert document["goals"][0]["label"] == "main"

    def test_unknown_label_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys, "tree", FIXTURES / "bevy.tl", "--goal", "nope"
        )
        assert code == 2
        assert "nope" in err


class TestRank:
    def test_inertia_order(self, capsys):
        code, out, _ = run_cli(
            capsys, "rank", FIXTURES / "bevy.tl", "--goal", "main",
            "--heuristic", "inertia",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].split(None, 1) == ["1", "Timer: SystemParam"]
        assert lines[1].split(None, 1) == ["9", "run_timer: System"]


class TestCompare:
    def test_table_and_json(self, capsys):
        files = [FIXTURES / f"{n}.tl" for n in
                 ["bevy", "diesel", "ast", "space", "brew", "axum"]]
        code, out, _ = run_cli(
            capsys, "compare", *files,
            "--ground-truth-map", FIXTURES / "ground_truth.json",
            "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["medians"]["inertia"] == 0
        code, out, _ = run_cli(
            capsys, "compare", *files,
            "--ground-truth-map", FIXTURES / "ground_truth.json",
        )
        assert code == 0
        assert out.splitlines()[0].startswith("program")
        assert any(line.startswith("median") for line in out.splitlines())

    def test_unmatched_ground_truth_exits_2(self, tmp_path, capsys):
        truth = tmp_path / "truth.json"
        truth.write_text(json.dumps({"bevy.tl": "not: AThing"}))
        code, _, err = run_cli(
            capsys, "compare", FIXTURES / "bevy.tl", "--ground-truth-map", truth
        )
        assert code == 2
        assert "failing leaves" in err


class TestEnvOverride:
    def test_max_depth_env(self, capsys, tmp_path, monkeypatch):
        program = tmp_path / "deep.tl"
        program.write_text(
            "trait Tr;\nnewtype W<T> = T;\nnewtype A = unit;\n"
            "impl<X> Tr for X where W<X>: Tr;\ngoal g: A: Tr;\n"
        )
        monkeypatch.setenv("TRAITSCOPE_MAX_DEPTH", "3")
        code, out, _ = run_cli(capsys, "tree", program, "--goal", "g")
        assert code == 0
        assert "overflow" in out
        assert out.count("W<..>") <= 5
