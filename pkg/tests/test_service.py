import json
import math
import threading
import urllib.error
import urllib.request

import pytest

from cheesecake import Cheesecake, serialize
from cheesecake.service import make_server


@pytest.fixture
def server(tmp_path):
    model = Cheesecake()
    for name in ("work", "family"):
        model = model.create_sector(name, ["close", "distant"])
    doc_path = tmp_path / "doc.json"
    doc_path.write_bytes(serialize(model))
    srv = make_server(doc_path, port=0)
    thread = threading.Thread(target=lambda: srv.serve_forever(poll_interval=0.02), daemon=True)
    thread.start()
    srv.doc_path = doc_path  # annotate for tests
    yield srv
    srv.shutdown()
    srv.server_close()
    thread.join(timeout=5)


def request(server, method, path, body=None):
    host, port = server.server_address[:2]
    req = urllib.request.Request(
        f"http://{host}:{port}{path}",
        method=method,
        data=body,
        headers={"Content-Type": "application/json"} if body else {},
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as e:
        return e.code, e.read()


def get(server, path):
    return request(server, "GET", path)


def post(server, path, payload):
    return request(server, "POST", path, json.dumps(payload).encode())


class TestModelEndpoint:
    def test_get_model_returns_canonical_doc(self, server):
        status, body = get(server, "/api/model")
        assert status == 200
        doc = json.loads(body)
        assert doc["version"] == 1
        assert [s["id"] for s in doc["sectors"]] == ["s1", "s2"]

    def test_unknown_route_404(self, server):
        status, body = get(server, "/api/nope")
        assert status == 404
        assert json.loads(body)["error"] == "NotFound"


class TestCommands:
    def test_batch_applies_and_persists(self, server):
        commands = [
            {"op": "add_contact", "contact": {"id": "c1", "name": "Ana", "avatar": None}},
            {"op": "assign", "contact": "c1", "sector": "s1", "depth": 0},
        ]
        status, body = post(server, "/api/commands", commands)
        assert status == 200
        doc = json.loads(body)
        assert doc["assignments"] == [{"contact": "c1", "sector": "s1", "depth": 0}]
        # response is the new canonical document and matches both the next GET
        # and the rewritten file
        assert get(server, "/api/model") == (200, body)
        assert server.doc_path.read_bytes() == body

        status, body = get(server, "/api/audience?cells=s1:0")
        assert status == 200
        assert json.loads(body) == ["c1"]

    def test_failed_batch_is_atomic(self, server):
        _, before = get(server, "/api/model")
        file_before = server.doc_path.read_bytes()
        commands = [
            {"op": "add_contact", "contact": {"id": "c1", "name": "Ana"}},
            {"op": "assign", "contact": "c1", "sector": "nope", "depth": 0},
        ]
        status, body = post(server, "/api/commands", commands)
        assert status == 422
        failure = json.loads(body)
        assert failure["index"] == 1
        assert failure["error"] == "UnknownSector"
        assert "message" in failure
        assert get(server, "/api/model") == (200, before)
        assert server.doc_path.read_bytes() == file_before

    def test_malformed_body_400(self, server):
        status, body = request(server, "POST", "/api/commands", b"{nope")
        assert status == 400
        assert json.loads(body)["error"] == "ParseError"

    def test_non_list_body_400(self, server):
        status, body = post(server, "/api/commands", {"op": "assign"})
        assert status == 400

    def test_unknown_op_400_with_path(self, server):
        status, body = post(server, "/api/commands", [{"op": "explode"}])
        assert status == 400
        failure = json.loads(body)
        assert failure["error"] == "BadCommand"
        assert failure["path"] == "commands[0].op"

    def test_post_to_get_route_404(self, server):
        status, _ = request(server, "POST", "/api/model", b"{}")
        assert status == 404


class TestLayoutEndpoint:
    def test_served_layout_obeys_engine_invariants(self, server):
        # the wire document itself must satisfy conservation and tiling
        post(
            server,
            "/api/commands",
            [
                {"op": "add_contact", "contact": {"id": f"c{i}", "name": f"P{i}"}}
                for i in range(6)
            ]
            + [
                {"op": "assign", "contact": "c0", "sector": "s1", "depth": 0},
                {"op": "assign", "contact": "c1", "sector": "s1", "depth": 0},
                {"op": "assign", "contact": "c2", "sector": "s2", "depth": 1},
            ],
        )
        status, body = get(server, "/api/layout?width=420&height=380&sector_gap=0.05")
        assert status == 200
        doc = json.loads(body)
        n = len(doc["sectors"])
        total = sum(s["theta_end"] - s["theta_start"] for s in doc["sectors"])
        assert abs(total + n * 0.05 - 2 * math.pi) < 1e-9
        for arc in doc["sectors"]:
            bands = arc["bands"]
            assert bands[0]["r_inner"] == doc["hub_radius"]
            assert bands[-1]["r_outer"] == doc["outer_radius"]
            for a, b in zip(bands, bands[1:]):
                assert a["r_outer"] == b["r_inner"]
            for band in bands:
                for p in band["placements"]:
                    dx = p["x"] - doc["center"]["x"]
                    dy = p["y"] - doc["center"]["y"]
                    r = math.hypot(dx, dy)
                    assert band["r_inner"] < r < band["r_outer"]
                    theta = math.atan2(dx, -dy) % (2 * math.pi)
                    width = arc["theta_end"] - arc["theta_start"]
                    assert 0.0 < (theta - arc["theta_start"]) % (2 * math.pi) < width

    def test_equal_arcs_and_defaults(self, server):
        status, body = get(server, "/api/layout?width=500&height=500")
        assert status == 200
        doc = json.loads(body)
        assert doc["center"] == {"x": 250.0, "y": 250.0}
        assert doc["outer_radius"] == pytest.approx(225.0)
        assert doc["hub_radius"] == pytest.approx(60.0)
        widths = [s["theta_end"] - s["theta_start"] for s in doc["sectors"]]
        assert all(w == pytest.approx(math.pi) for w in widths)  # two sectors

    def test_overrides_by_name(self, server):
        status, body = get(
            server, "/api/layout?width=500&height=500&hub_radius=10&outer_radius=120"
        )
        assert status == 200
        doc = json.loads(body)
        assert doc["hub_radius"] == 10.0
        assert doc["outer_radius"] == 120.0

    def test_focus_query(self, server):
        status, body = get(server, "/api/layout?width=400&height=400&focus=s2")
        assert status == 200
        doc = json.loads(body)
        widths = {s["sector"]: s["theta_end"] - s["theta_start"] for s in doc["sectors"]}
        assert widths["s2"] == pytest.approx(math.pi)

    def test_missing_viewport_400(self, server):
        status, body = get(server, "/api/layout?width=500")
        assert status == 400
        status, body = get(server, "/api/layout?width=abc&height=5")
        assert status == 400

    def test_unknown_focus_422(self, server):
        status, body = get(server, "/api/layout?width=100&height=100&focus=zz")
        assert status == 422
        assert json.loads(body)["error"] == "UnknownFocusSector"


class TestAudienceEndpoint:
    def test_threshold(self, server):
        post(
            server,
            "/api/commands",
            [
                {"op": "add_contact", "contact": {"id": "c1", "name": "Ana"}},
                {"op": "add_contact", "contact": {"id": "c2", "name": "Bob"}},
                {"op": "assign", "contact": "c1", "sector": "s1", "depth": 0},
                {"op": "assign", "contact": "c2", "sector": "s2", "depth": 1},
            ],
        )
        status, body = get(server, "/api/audience?threshold=0")
        assert (status, json.loads(body)) == (200, ["c1"])
        status, body = get(server, "/api/audience?threshold=1")
        assert (status, json.loads(body)) == (200, ["c1", "c2"])

    def test_requires_exactly_one_selector(self, server):
        assert get(server, "/api/audience")[0] == 400
        assert get(server, "/api/audience?cells=s1:0&threshold=1")[0] == 400

    def test_unknown_sector_422(self, server):
        status, body = get(server, "/api/audience?cells=zz:0")
        assert status == 422
        assert json.loads(body)["error"] == "UnknownSector"

    def test_bad_cells_syntax_400(self, server):
        assert get(server, "/api/audience?cells=justtext")[0] == 400


class TestStatic:
    def test_placeholder_without_assets(self, server):
        status, body = get(server, "/")
        assert status == 200
        assert b"cheesecake" in body

    def test_static_dir_served(self, tmp_path):
        static = tmp_path / "ui"
        static.mkdir()
        (static / "index.html").write_text("<html>app</html>")
        (static / "app.js").write_text("console.log(1)")
        doc = tmp_path / "d.json"
        doc.write_bytes(serialize(Cheesecake()))
        srv = make_server(doc, port=0, static_dir=static)
        thread = threading.Thread(target=lambda: srv.serve_forever(poll_interval=0.02), daemon=True)
        thread.start()
        try:
            assert get(srv, "/")[1] == b"<html>app</html>"
            status, body = get(srv, "/app.js")
            assert status == 200 and b"console" in body
            assert get(srv, "/../secret")[0] == 404
            assert get(srv, "/missing.js")[0] == 404
        finally:
            srv.shutdown()
            srv.server_close()
            thread.join(timeout=5)


class TestConcurrency:
    def test_parallel_batches_serialize(self, server):
        # ten writers race; every contact must land exactly once
        errors = []

        def add(i):
            try:
                status, _ = post(
                    server,
                    "/api/commands",
                    [{"op": "add_contact", "contact": {"id": f"c{i}", "name": f"P{i}"}}],
                )
                assert status == 200
            except Exception as e:  # pragma: no cover
                errors.append(e)

        threads = [threading.Thread(target=add, args=(i,)) for i in range(10)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        _, body = get(server, "/api/model")
        assert len(json.loads(body)["contacts"]) == 10
