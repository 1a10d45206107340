"""HTTP transport for the protocol dispatcher.

A thin stdlib wrapper: every /v1 request is decoded, handed to
GameService.handle_request, and the (status, dict) result written back as
JSON. /app serves the bundled web player's static files when a directory
is configured. No TLS, no accounts; run behind a proxy if you need either.
"""

from __future__ import annotations

import json
import logging
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .protocol import GameService

log = logging.getLogger("locus.server")

MAX_BODY_BYTES = 1 << 20


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "locus"

    service: GameService = None  # set by make_server
    static_dir: Path | None = None

    def do_GET(self):
        self._handle("GET")

    def do_POST(self):
        self._handle("POST")

    def _handle(self, method: str) -> None:
        plain = self.path.split("?", 1)[0]
        if plain == "/" or plain == "/app" or plain.startswith("/app/"):
            self._serve_static()
            return
        length = int(self.headers.get("Content-Length") or 0)
        if length > MAX_BODY_BYTES:
            self._write(413, {"ok": False, "error": {"code": "BAD_BODY", "message": "body too large"}})
            return
        body = self.rfile.read(length) if length else None
        status, payload = self.service.handle_request(method, self.path, dict(self.headers), body)
        self._write(status, payload)

    def _write(self, status: int, payload: dict) -> None:
        blob = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(blob)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(blob)

    def _serve_static(self) -> None:
        if self.static_dir is None:
            self._write(404, {"ok": False, "error": {"code": "NOT_FOUND", "message": "no web player bundled"}})
            return
        rel = self.path.split("?", 1)[0]
        rel = rel[len("/app"):] if rel.startswith("/app") else rel
        rel = rel.lstrip("/") or "index.html"
        root = self.static_dir.resolve()
        target = (root / rel).resolve()
        inside = root in target.parents
        if not inside or not target.is_file():
            self._write(404, {"ok": False, "error": {"code": "NOT_FOUND", "message": f"no asset {rel!r}"}})
            return
        blob = target.read_bytes()
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(blob)))
        self.end_headers()
        self.wfile.write(blob)

    def log_message(self, fmt, *args):
        log.debug("%s %s", self.address_string(), fmt % args)


def make_server(service: GameService, host: str, port: int, static_dir: Path | None = None) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"service": service, "static_dir": static_dir})
    return ThreadingHTTPServer((host, port), handler)


class ServerThread:
    """A protocol server on a background thread, for tests and the harness."""

    def __init__(self, service: GameService, host: str = "127.0.0.1", port: int = 0,
                 static_dir: Path | None = None):
        self.httpd = make_server(service, host, port, static_dir)
        self.thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)

    @property
    def address(self) -> str:
        host, port = self.httpd.server_address[:2]
        return f"http://{host}:{port}"

    def __enter__(self) -> "ServerThread":
        self.thread.start()
        return self

    def __exit__(self, *exc) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
