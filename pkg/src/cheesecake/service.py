"""Single-document demo HTTP service.

Owns one current model, applies command batches atomically against it, and
serves layouts, audiences, and the browser UI's static assets.

Endpoints::

    GET  /api/model                        current document
    POST /api/commands                     JSON array of commands, all-or-nothing
    GET  /api/layout?width=&height=        layout document (focus=, outer_radius=,
                                           hub_radius=, ... override the defaults)
    GET  /api/audience?cells=sid:d,sid:d   audience of explicit cells
    GET  /api/audience?threshold=d         audience of all cells with depth <= d
    GET  /                                 webui assets

Status codes: 400 malformed request, 422 model/validation error (body carries
the error code, message, and failing index/path where applicable), 404
unknown route. Successful responses are the canonical documents.

Commands are serialized through a single writer lock; reads serve an
immutable snapshot, so GET never blocks on a writer.
"""

from __future__ import annotations

import json
import mimetypes
import socketserver
import threading
import urllib.parse
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .commands import BatchFailure, apply_batch
from .document import canonical_json_bytes, deserialize, serialize
from .errors import BadCommand, CheesecakeError
from .layout import compute_layout, layout_to_doc, viewport_config
from .model import Cells, Cheesecake, DepthThreshold

_PLACEHOLDER_PAGE = b"""<!doctype html>
<html><head><meta charset="utf-8"><title>cheesecake</title></head>
<body><h1>cheesecake service</h1>
<p>No webui assets configured (pass --static DIR). The API lives under /api/.</p>
</body></html>
"""

_FLOAT_PARAMS = (
    "outer_radius",
    "hub_radius",
    "start_angle",
    "sector_gap",
    "focus_fraction",
    "avatar_radius",
    "avatar_padding",
)


class DocumentService:
    """Current model + canonical bytes, with single-writer command application."""

    def __init__(self, doc_path: str | Path, static_dir: str | Path | None = None):
        self.doc_path = Path(doc_path)
        self.static_dir = Path(static_dir).resolve() if static_dir else None
        model = deserialize(self.doc_path.read_bytes())
        self._state: tuple[Cheesecake, bytes] = (model, serialize(model))
        self._write_lock = threading.Lock()

    @property
    def snapshot(self) -> tuple[Cheesecake, bytes]:
        return self._state

    def apply_commands(self, commands) -> bytes:
        from .cli import write_doc_atomic

        with self._write_lock:
            model, _ = self._state
            new_model = apply_batch(model, commands)
            data = serialize(new_model)
            write_doc_atomic(self.doc_path, data)
            self._state = (new_model, data)
            return data


class _Handler(BaseHTTPRequestHandler):
    @property
    def service(self) -> DocumentService:
        return self.server.service  # type: ignore[attr-defined]

    def log_message(self, format, *args):  # keep test output clean
        pass

    def do_GET(self):
        url = urllib.parse.urlsplit(self.path)
        query = urllib.parse.parse_qs(url.query)
        if url.path == "/api/model":
            _, data = self.service.snapshot
            self._send(200, "application/json", data)
        elif url.path == "/api/layout":
            self._get_layout(query)
        elif url.path == "/api/audience":
            self._get_audience(query)
        else:
            self._get_static(url.path)

    def do_POST(self):
        url = urllib.parse.urlsplit(self.path)
        if url.path != "/api/commands":
            self._send_json(404, {"error": "NotFound", "message": f"no route {url.path}"})
            return
        length = int(self.headers.get("Content-Length") or 0)
        body = self.rfile.read(length)
        try:
            commands = json.loads(body.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            self._send_json(400, {"error": "ParseError", "message": f"invalid JSON body: {e}"})
            return
        try:
            data = self.service.apply_commands(commands)
        except BadCommand as e:
            self._send_json(400, {"error": e.code, "path": e.path, "message": e.message})
            return
        except BatchFailure as e:
            payload = {"index": e.index, "error": e.error.code, "message": str(e.error)}
            path = getattr(e.error, "path", None)
            if path is not None:
                payload["path"] = path
            self._send_json(422, payload)
            return
        self._send(200, "application/json", data)

    # -- GET endpoints ---------------------------------------------------

    def _get_layout(self, query):
        try:
            width = _required_float(query, "width")
            height = _required_float(query, "height")
            overrides = {name: _optional_float(query, name) for name in _FLOAT_PARAMS}
        except ValueError as e:
            self._send_json(400, {"error": "BadRequest", "message": str(e)})
            return
        focus = query.get("focus", [None])[0]
        model, _ = self.service.snapshot
        try:
            config = viewport_config(width, height, focus=focus, **overrides)
            doc = layout_to_doc(compute_layout(model, config))
        except CheesecakeError as e:
            self._send_json(422, {"error": e.code, "message": str(e)})
            return
        self._send(200, "application/json", canonical_json_bytes(doc))

    def _get_audience(self, query):
        cells = query.get("cells", [None])[0]
        threshold = query.get("threshold", [None])[0]
        if (cells is None) == (threshold is None):
            self._send_json(
                400,
                {"error": "BadRequest", "message": "pass exactly one of cells= or threshold="},
            )
            return
        try:
            if cells is not None:
                selection = Cells(_parse_cells(cells))
            else:
                d = int(threshold)
                if d < 0:
                    raise ValueError("threshold must be >= 0")
                selection = DepthThreshold(d)
        except ValueError as e:
            self._send_json(400, {"error": "BadRequest", "message": str(e)})
            return
        model, _ = self.service.snapshot
        try:
            ids = sorted(model.audience(selection))
        except CheesecakeError as e:
            self._send_json(422, {"error": e.code, "message": str(e)})
            return
        self._send(200, "application/json", canonical_json_bytes(ids))

    def _get_static(self, path):
        static_dir = self.service.static_dir
        if path in ("/", "/index.html") and static_dir is None:
            self._send(200, "text/html; charset=utf-8", _PLACEHOLDER_PAGE)
            return
        if static_dir is None:
            self._send_json(404, {"error": "NotFound", "message": f"no route {path}"})
            return
        rel = path.lstrip("/") or "index.html"
        target = (static_dir / rel).resolve()
        if not target.is_relative_to(static_dir) or not target.is_file():
            self._send_json(404, {"error": "NotFound", "message": f"no route {path}"})
            return
        content_type = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        if content_type.startswith("text/") or content_type in ("application/javascript", "application/json"):
            content_type += "; charset=utf-8"
        self._send(200, content_type, target.read_bytes())

    # -- plumbing --------------------------------------------------------

    def _send(self, status: int, content_type: str, data: bytes):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _send_json(self, status: int, obj):
        self._send(status, "application/json", canonical_json_bytes(obj))


class _Server(ThreadingHTTPServer):
    daemon_threads = True

    def server_bind(self):
        # HTTPServer.server_bind does a reverse DNS lookup; skip it
        socketserver.TCPServer.server_bind(self)
        host, port = self.server_address[:2]
        self.server_name = host
        self.server_port = port


def make_server(
    doc_path: str | Path,
    host: str = "127.0.0.1",
    port: int = 0,
    static_dir: str | Path | None = None,
) -> ThreadingHTTPServer:
    """Build a ready-to-run server; port 0 picks a free port."""
    service = DocumentService(doc_path, static_dir=static_dir)
    server = _Server((host, port), _Handler)
    server.service = service  # type: ignore[attr-defined]
    return server


def serve_forever(
    doc_path: str | Path,
    host: str,
    port: int,
    static_dir: str | Path | None = None,
) -> None:
    if static_dir is None and Path("frontend/dist/index.html").is_file():
        static_dir = "frontend/dist"
    server = make_server(doc_path, host=host, port=port, static_dir=static_dir)
    host_, port_ = server.server_address[:2]
    print(f"serving {doc_path} on http://{host_}:{port_}/ (Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def _required_float(query, name) -> float:
    values = query.get(name)
    if not values:
        raise ValueError(f"missing query parameter {name}")
    try:
        return float(values[0])
    except ValueError:
        raise ValueError(f"query parameter {name} must be a number") from None


def _optional_float(query, name) -> float | None:
    values = query.get(name)
    if not values:
        return None
    try:
        return float(values[0])
    except ValueError:
        raise ValueError(f"query parameter {name} must be a number") from None


def _parse_cells(text: str) -> list[tuple[str, int]]:
    cells = []
    for part in text.split(","):
        sid, sep, depth = part.rpartition(":")
        if not sep or not sid:
            raise ValueError(f"bad cell {part!r}, expected SECTOR:DEPTH")
        cells.append((sid, int(depth)))
    return cells
