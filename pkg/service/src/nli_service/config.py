"""Service configuration, from a JSON file and/or environment variables.

Environment variables override file values:

    NLI_SERVICE_MODEL           model identifier (path or hub id)
    NLI_SERVICE_DEVICE          torch device string (default cpu)
    NLI_SERVICE_MAX_BATCH_SIZE  request batch limit
    NLI_SERVICE_PORT            listen port
    NLI_SERVICE_ENTAIL_LABEL    name of the entailment class, when the
                                model's label map alone is ambiguous
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

ENV_PREFIX = "NLI_SERVICE_"


@dataclass
class ServiceConfig:
    model: str
    device: str = "cpu"
    max_batch_size: int = 64
    port: int = 8900
    entail_label: str | None = None

    def __post_init__(self) -> None:
        if not self.model:
            raise ValueError("config needs a model identifier")
        if self.max_batch_size < 1:
            raise ValueError("max_batch_size must be >= 1")

    @classmethod
    def load(
        cls, path: str | Path | None = None, overrides: dict | None = None
    ) -> "ServiceConfig":
        """File values, then environment variables, then explicit overrides
        (e.g. command-line flags), each layer winning over the previous."""
        known = {"model", "device", "max_batch_size", "port", "entail_label"}
        doc: dict = {}
        if path is not None:
            with open(path, "r", encoding="utf-8") as fp:
                doc = json.load(fp)
            unknown = set(doc) - known
            if unknown:
                raise ValueError(f"unknown config keys: {sorted(unknown)}")
        env = os.environ
        merged = {
            "model": env.get(ENV_PREFIX + "MODEL", doc.get("model", "")),
            "device": env.get(ENV_PREFIX + "DEVICE", doc.get("device", "cpu")),
            "max_batch_size": env.get(
                ENV_PREFIX + "MAX_BATCH_SIZE", doc.get("max_batch_size", 64)
            ),
            "port": env.get(ENV_PREFIX + "PORT", doc.get("port", 8900)),
            "entail_label": env.get(ENV_PREFIX + "ENTAIL_LABEL", doc.get("entail_label")),
        }
        for key, value in (overrides or {}).items():
            if key not in known:
                raise ValueError(f"unknown config override {key!r}")
            if value is not None:
                merged[key] = value
        merged["max_batch_size"] = int(merged["max_batch_size"])
        merged["port"] = int(merged["port"])
        return cls(**merged)
