"""Client for an external entailment-scoring service.

Wire protocol: HTTP POST `<endpoint>/score` with body
`{"pairs": [{"id": "...", "premise": "...", "hypothesis": "..."}]}` and
response `{"scores": [{"id": "...", "entail": 0.83}]}`. Non-2xx responses
carry `{"error": "..."}`. Responses are matched to requests by id, never
by arrival order, and out-of-range probabilities are rejected rather than
clamped.

Transport failures (connection errors, timeouts, 5xx) are retried
idempotently; protocol violations are not.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import requests

from ..errors import ProtocolError, TransportError
from .base import CONSUMES_HYPOTHESIS, Scorer

DEFAULT_BATCH_SIZE = 32
DEFAULT_TIMEOUT = 30.0
DEFAULT_RETRIES = 2


def _score_url(endpoint: str) -> str:
    return endpoint.rstrip("/") + "/score"


def _post_batch(
    session: requests.Session,
    endpoint: str,
    batch: Sequence[tuple[str, str]],
    timeout: float,
    retries: int,
    retry_wait: float,
) -> list[float]:
    """Score one batch; returns probabilities aligned with `batch`."""
    ids = [f"p{i}" for i in range(len(batch))]
    payload = {
        "pairs": [
            {"id": pid, "premise": premise, "hypothesis": text}
            for pid, (premise, text) in zip(ids, batch)
        ]
    }
    attempt = 0
    while True:
        try:
            resp = session.post(_score_url(endpoint), json=payload, timeout=timeout)
        except requests.RequestException as exc:
            if attempt < retries:
                attempt += 1
                time.sleep(retry_wait * attempt)
                continue
            raise TransportError(f"scoring service unreachable: {exc}") from exc
        if 500 <= resp.status_code < 600 and attempt < retries:
            attempt += 1
            time.sleep(retry_wait * attempt)
            continue
        break
    if resp.status_code != 200:
        detail = ""
        try:
            detail = resp.json().get("error", "")
        except ValueError:
            pass
        raise TransportError(
            f"scoring service returned HTTP {resp.status_code}"
            + (f": {detail}" if detail else "")
        )
    try:
        doc = resp.json()
    except ValueError as exc:
        raise ProtocolError("scoring service returned non-JSON body") from exc
    scores = doc.get("scores")
    if not isinstance(scores, list):
        raise ProtocolError("scoring response missing 'scores' array")
    if len(scores) != len(batch):
        raise ProtocolError(
            f"scoring response has {len(scores)} entries for {len(batch)} pairs"
        )
    by_id: dict[str, float] = {}
    for entry in scores:
        if not isinstance(entry, dict) or "id" not in entry or "entail" not in entry:
            raise ProtocolError(f"malformed score entry: {entry!r}")
        pid = entry["id"]
        if pid in by_id:
            raise ProtocolError(f"duplicate id in scoring response: {pid!r}")
        value = entry["entail"]
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ProtocolError(f"non-numeric probability for id {pid!r}: {value!r}")
        if not 0.0 <= value <= 1.0:
            raise ProtocolError(
                f"probability outside [0,1] for id {pid!r}: {value} (not clamping)"
            )
        by_id[pid] = float(value)
    missing = [pid for pid in ids if pid not in by_id]
    if missing:
        raise ProtocolError(f"scoring response missing ids: {missing}")
    return [by_id[pid] for pid in ids]


class ExternalScorer(Scorer):
    consumes = CONSUMES_HYPOTHESIS

    def __init__(
        self,
        endpoint: str,
        batch_size: int = DEFAULT_BATCH_SIZE,
        timeout: float = DEFAULT_TIMEOUT,
        retries: int = DEFAULT_RETRIES,
        parallel: int = 1,
        retry_wait: float = 0.2,
    ) -> None:
        if batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if parallel < 1:
            raise ValueError("parallel must be >= 1")
        self.endpoint = endpoint
        self.batch_size = batch_size
        self.timeout = timeout
        self.retries = retries
        self.parallel = parallel
        self.retry_wait = retry_wait
        self._session = requests.Session()

    def score_batch(self, batch: Sequence[tuple[str, str]]) -> list[float]:
        if not batch:
            return []
        chunks = [
            batch[i : i + self.batch_size] for i in range(0, len(batch), self.batch_size)
        ]
        if self.parallel == 1 or len(chunks) == 1:
            results = [self._post(chunk) for chunk in chunks]
        else:
            # Concurrent batches are matched back by position, and within a
            # batch by id, so arrival order never matters.
            with ThreadPoolExecutor(max_workers=self.parallel) as pool:
                results = list(pool.map(self._post, chunks))
        return [p for chunk_probs in results for p in chunk_probs]

    def _post(self, chunk: Sequence[tuple[str, str]]) -> list[float]:
        return _post_batch(
            self._session,
            self.endpoint,
            chunk,
            timeout=self.timeout,
            retries=self.retries,
            retry_wait=self.retry_wait,
        )


def external_score(
    endpoint: str, batch: Sequence[tuple[str, str]], **kwargs
) -> list[float]:
    """One-shot scoring of (premise, hypothesis-text) pairs via the service."""
    return ExternalScorer(endpoint, **kwargs).score_batch(batch)


def validate_endpoint(endpoint: str, n_pairs: int = 50, **kwargs) -> list[float]:
    """Protocol conformance probe: sends `n_pairs` deterministic pairs and
    applies every client-side check (alignment, ids, probability range).

    Returns the scores on success; raises TransportError/ProtocolError on
    any violation.
    """
    batch = [
        (f"probe premise number {i}", f"probe hypothesis number {i}")
        for i in range(n_pairs)
    ]
    scorer = ExternalScorer(endpoint, **kwargs)
    probs = scorer.score_batch(batch)
    if len(probs) != n_pairs:
        raise ProtocolError(f"expected {n_pairs} scores, got {len(probs)}")
    return probs
