"""HTTP service endpoints over the Bevy fixture."""

import json
import shutil
import time

import pytest
from fastapi.testclient import TestClient

from conftest import FIXTURES
from traitscope.document import document_from_json
from traitscope.service.app import create_app


@pytest.fixture()
def served(tmp_path):
    path = tmp_path / "bevy.tl"
    shutil.copy(FIXTURES / "bevy.tl", path)
    app = create_app(str(path))
    with TestClient(app) as client:
        yield client, path, app


class TestEndpoints:
    def test_goals(self, served):
        client, _, _ = served
        reply = client.get("/api/goals")
        assert reply.status_code == 200
        assert reply.json() == [{"label": "main", "result": "no"}]

    def test_tree_fragment_is_canonical_document(self, served):
        client, _, _ = served
        reply = client.get("/api/tree", params={"goal": "main"})
        assert reply.status_code == 200
        document = document_from_json(reply.text)
        assert document["goals"][0]["label"] == "main"
        assert reply.text.endswith("\n")

    def test_tree_unknown_goal_404(self, served):
        client, _, _ = served
        assert client.get("/api/tree", params={"goal": "zzz"}).status_code == 404

    def test_node_payload_has_both_renderings(self, served):
        client, _, _ = served
        root = client.get("/api/tree", params={"goal": "main"}).json()["goals"][0]["root"]
        reply = client.get(f"/api/node/{root}")
        assert reply.status_code == 200
        payload = reply.json()
        assert payload["predicate"]["short"] == "run_timer: IntoSystemConfigs<..>"
        assert (
            payload["predicate"]["qualified"]
            == "run_timer: bevy::IntoSystemConfigs<?0>"
        )
        assert client.get("/api/node/99999").status_code == 404

    def test_impls_lists_heads_with_spans(self, served):
        client, _, _ = served
        reply = client.get("/api/impls", params={"trait": "SystemParam"})
        assert reply.status_code == 200
        data = reply.json()
        assert data["trait"] == "bevy::SystemParam"
        assert len(data["impls"]) == 1
        head = data["impls"][0]
        assert head["head_short"] == "impl SystemParam for ResMut<..>"
        assert head["span"]["line_start"] > 0

    def test_impls_zero_impl_trait(self, served):
        client, _, _ = served
        reply = client.get("/api/impls", params={"trait": "System"})
        assert reply.status_code == 200
        assert reply.json()["impls"] == []

    def test_rankings(self, served):
        client, _, _ = served
        reply = client.get("/api/rankings", params={"goal": "main"})
        assert reply.status_code == 200
        data = reply.json()
        assert set(data) == {"inertia", "depth", "infer_vars"}
        tree = client.get("/api/tree", params={"goal": "main"}).json()
        nodes = tree["goals"][0]["nodes"]
        first = nodes[str(data["inertia"][0])]
        assert first["predicate"]["short"] == "Timer: SystemParam"

    def test_source_returns_file_text(self, served):
        client, path, _ = served
        reply = client.get("/api/source", params={"file": str(path), "line": 3})
        assert reply.status_code == 200
        assert "IntoSystemConfigs" in reply.json()["text"]
        assert client.get("/api/source", params={"file": "nope.tl"}).status_code == 404

    def test_placeholder_index_when_ui_not_built(self, served):
        client, _, _ = served
        reply = client.get("/")
        assert reply.status_code == 200
        assert "text/html" in reply.headers["content-type"]

    def test_idempotent_reads(self, served):
        client, _, _ = served
        a = client.get("/api/tree", params={"goal": "main"}).text
        b = client.get("/api/tree", params={"goal": "main"}).text
        assert a == b


class TestReload:
    def test_reload_on_change_bumps_generation(self, served):
        client, path, app = served
        store = app.state.store
        first = store.snapshot.generation
        assert client.get("/api/goals").json()[0]["result"] == "no"

        text = path.read_text().replace(
            "newtype run_timer = fn(Timer) -> unit;",
            "newtype run_timer = fn(bevy::ResMut<Timer>) -> unit;",
        )
        path.write_text(text)
        # mtime granularity can swallow rapid rewrites
        time.sleep(0.02)
        changed = store.reload_if_changed()
        if not changed:
            import os

            os.utime(path, (time.time() + 1, time.time() + 1))
            changed = store.reload_if_changed()
        assert changed
        assert store.snapshot.generation == first + 1
        assert client.get("/api/goals").json()[0]["result"] == "yes"

    def test_broken_rewrite_keeps_previous_snapshot(self, served):
        client, path, app = served
        store = app.state.store
        path.write_text("goal g: Broken:")
        import os

        os.utime(path, (time.time() + 2, time.time() + 2))
        assert store.reload_if_changed() is False
        assert client.get("/api/goals").json()[0]["result"] == "no"

    def test_events_stream_emits_document_on_resolve(self, served):
        import asyncio
        import os

        from traitscope.service.app import event_stream

        _, path, app = served
        store = app.state.store

        async def drive():
            stream = event_stream(store, interval=0.01)
            frames = [await stream.__anext__()]
            path.write_text(path.read_text() + "\n// touched\n")
            os.utime(path, (time.time() + 3, time.time() + 3))
            assert store.reload_if_changed()
            frames.append(await stream.__anext__())
            await stream.aclose()
            return frames

        frames = asyncio.run(drive())
        assert frames[0].startswith(":")
        assert frames[1].startswith("event: document\ndata: 1")


class TestIllFormedFile:
    def test_create_app_rejects_ill_formed_source(self, tmp_path):
        bad = tmp_path / "wf.tl"
        bad.write_text("trait Tr<A, B>; newtype N = unit; goal g: N: Tr<N>;\n")
        with pytest.raises(ValueError) as err:
            create_app(str(bad))
        assert "expects 2 type arguments" in str(err.value)
