"""Model wrapper: any sequence-classification checkpoint becomes a binary
entailment scorer.

The checkpoint may be a 2-class or 3-class model; any non-entailment
classes (neutral, contradiction, ...) collapse into "non-entailment".
Since the collapse sums a full softmax, the binary distribution is
(p_entail, 1 - p_entail) and needs no further normalization. Inference
runs in eval mode under no_grad, so identical requests yield identical
scores.
"""

from __future__ import annotations

from typing import Sequence

import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer


class ModelLoadError(RuntimeError):
    """The checkpoint cannot serve as an entailment scorer; startup aborts."""


def resolve_entail_index(id2label: dict, override: str | None = None) -> int:
    """Find the entailment class index in a model's label map."""

    def canon(name: str) -> str:
        return str(name).strip().lower().replace("-", "_").replace(" ", "_")

    if override is not None:
        want = canon(override)
        for idx, name in id2label.items():
            if canon(name) == want:
                return int(idx)
        raise ModelLoadError(
            f"entail_label {override!r} not found in model labels {list(id2label.values())}"
        )
    candidates = []
    for idx, name in id2label.items():
        c = canon(name)
        if c.startswith(("non", "not", "contra")):
            continue
        if c in ("entail", "entailment") or "entail" in c:
            candidates.append(int(idx))
    if len(candidates) != 1:
        raise ModelLoadError(
            f"cannot identify a unique entailment class in {list(id2label.values())}; "
            f"set entail_label explicitly"
        )
    return candidates[0]


class EntailmentModel:
    def __init__(self, model_id: str, device: str = "cpu", entail_label: str | None = None):
        try:
            self.tokenizer = AutoTokenizer.from_pretrained(model_id)
            self.model = AutoModelForSequenceClassification.from_pretrained(model_id)
        except ModelLoadError:
            raise
        except Exception as exc:
            raise ModelLoadError(f"cannot load model {model_id!r}: {exc}") from exc
        self.model_id = model_id
        self.device = torch.device(device)
        self.model.to(self.device)
        self.model.eval()
        self.entail_index = resolve_entail_index(self.model.config.id2label, entail_label)

    def entail_probabilities(
        self, pairs: Sequence[tuple[str, str]], batch_size: int = 32, max_length: int = 256
    ) -> list[float]:
        """Probability of entailment per (premise, hypothesis) pair, in order."""
        probs: list[float] = []
        with torch.no_grad():
            for start in range(0, len(pairs), batch_size):
                chunk = pairs[start : start + batch_size]
                enc = self.tokenizer(
                    [p for p, _ in chunk],
                    [h for _, h in chunk],
                    padding=True,
                    truncation=True,
                    max_length=max_length,
                    return_tensors="pt",
                ).to(self.device)
                logits = self.model(**enc).logits
                full = torch.softmax(logits, dim=-1)
                probs.extend(full[:, self.entail_index].tolist())
        return probs
