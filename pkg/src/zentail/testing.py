"""In-process mock of the external scoring service.

Speaks the `/score` wire protocol over a real HTTP socket, so client code
is exercised end to end without a model behind it. The handler is
configurable to misbehave in every way the client must reject: wrong
status codes, malformed bodies, out-of-range probabilities, missing ids.

    with MockScoringServer(constant=0.7) as server:
        probs = external_score(server.url, [("a premise", "a hypothesis")])
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Callable

ScoreFn = Callable[[str, str], float]


def overlap_score(premise: str, hypothesis: str) -> float:
    """Deterministic toy scorer: fraction of hypothesis tokens present in
    the premise, squashed into (0, 1)."""
    p_tokens = set(premise.lower().split())
    h_tokens = hypothesis.lower().split()
    if not h_tokens:
        return 0.5
    hits = sum(1 for t in h_tokens if t in p_tokens)
    return 0.05 + 0.9 * (hits / len(h_tokens))


class MockScoringServer:
    """Minimal threaded HTTP server implementing POST /score."""

    def __init__(
        self,
        score_fn: ScoreFn | None = None,
        constant: float | None = None,
        max_batch_size: int | None = None,
        fail_first: int = 0,
        malform: str | None = None,
    ) -> None:
        """`malform` options: "not-json", "missing-scores", "short",
        "out-of-range", "drop-id", "shuffle" (a legal behavior the client
        must absorb by id matching)."""
        if constant is not None:
            score_fn = lambda p, h: constant  # noqa: E731
        self.score_fn = score_fn or overlap_score
        self.max_batch_size = max_batch_size
        self.malform = malform
        self.requests_served = 0
        self._fail_remaining = fail_first
        self._lock = threading.Lock()
        self._server = ThreadingHTTPServer(("127.0.0.1", 0), self._make_handler())
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> "MockScoringServer":
        self._thread.start()
        return self

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()

    def __enter__(self) -> "MockScoringServer":
        return self.start()

    def __exit__(self, *exc) -> None:
        self.stop()

    def _make_handler(self):
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args) -> None:  # keep test output clean
                pass

            def _send(self, status: int, body: dict | str) -> None:
                data = body.encode() if isinstance(body, str) else json.dumps(body).encode()
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def do_POST(self) -> None:
                if self.path != "/score":
                    self._send(404, {"error": "no such endpoint"})
                    return
                with outer._lock:
                    outer.requests_served += 1
                    if outer._fail_remaining > 0:
                        outer._fail_remaining -= 1
                        self._send(503, {"error": "transient failure (mock)"})
                        return
                length = int(self.headers.get("Content-Length", 0))
                try:
                    doc = json.loads(self.rfile.read(length))
                    pairs = doc["pairs"]
                except (ValueError, KeyError):
                    self._send(400, {"error": "malformed request"})
                    return
                if outer.max_batch_size is not None and len(pairs) > outer.max_batch_size:
                    self._send(413, {"error": "batch too large"})
                    return
                scores = [
                    {
                        "id": pair["id"],
                        "entail": outer.score_fn(pair["premise"], pair["hypothesis"]),
                    }
                    for pair in pairs
                ]
                if outer.malform == "not-json":
                    self._send(200, "this is not json {")
                    return
                if outer.malform == "missing-scores":
                    self._send(200, {"something": "else"})
                    return
                if outer.malform == "short" and scores:
                    scores = scores[:-1]
                elif outer.malform == "out-of-range" and scores:
                    scores[0]["entail"] = 1.2
                elif outer.malform == "drop-id" and scores:
                    del scores[0]["id"]
                elif outer.malform == "shuffle":
                    scores = list(reversed(scores))
                self._send(200, {"scores": scores})

        return Handler
