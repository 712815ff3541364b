"""HTTP surface.

POST /score implements the scoring wire protocol: request
{"pairs": [{"id", "premise", "hypothesis"}]}, response
{"scores": [{"id", "entail"}]} with ids and order preserved. Every
non-2xx response body is {"error": "..."}. GET /health reports the model
identifier and the batch limit.

Requests may arrive concurrently; a lock serializes access to the single
model instance.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import ServiceConfig
from .model import EntailmentModel


class PairIn(BaseModel):
    id: str
    premise: str
    hypothesis: str


class ScoreRequest(BaseModel):
    pairs: list[PairIn]


def create_app(config: ServiceConfig, model: EntailmentModel | None = None) -> FastAPI:
    if model is None:
        model = EntailmentModel(config.model, config.device, config.entail_label)
    app = FastAPI(title="nli-service", docs_url=None, redoc_url=None)
    lock = threading.Lock()

    @app.exception_handler(HTTPException)
    async def http_error(_request: Request, exc: HTTPException) -> JSONResponse:
        return JSONResponse(status_code=exc.status_code, content={"error": str(exc.detail)})

    @app.exception_handler(RequestValidationError)
    async def validation_error(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": f"invalid request: {exc}"})

    @app.get("/health")
    def health() -> dict:
        return {"model": model.model_id, "max_batch_size": config.max_batch_size}

    @app.post("/score")
    def score(request: ScoreRequest) -> dict:
        pairs = request.pairs
        if not pairs:
            raise HTTPException(status_code=400, detail="request carries no pairs")
        if len(pairs) > config.max_batch_size:
            raise HTTPException(
                status_code=413,
                detail=f"batch of {len(pairs)} exceeds limit {config.max_batch_size}",
            )
        seen_ids = set()
        for pair in pairs:
            if not pair.premise.strip():
                raise HTTPException(status_code=400, detail=f"pair {pair.id!r}: empty premise")
            if not pair.hypothesis.strip():
                raise HTTPException(status_code=400, detail=f"pair {pair.id!r}: empty hypothesis")
            if pair.id in seen_ids:
                raise HTTPException(status_code=400, detail=f"duplicate pair id {pair.id!r}")
            seen_ids.add(pair.id)
        with lock:
            probs = model.entail_probabilities(
                [(p.premise, p.hypothesis) for p in pairs],
                batch_size=config.max_batch_size,
            )
        return {"scores": [{"id": p.id, "entail": prob} for p, prob in zip(pairs, probs)]}

    return app
