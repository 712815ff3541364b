"""Uniform scorer contract.

A scorer turns (premise, hypothesis-text) pairs into entailment
probabilities in [0, 1], one per pair, deterministically for fixed scorer
state. Lexical baselines compare the premise against the label *name*
rather than the rendered hypothesis sentence, so each scorer declares
which text it consumes via `consumes`; `score_entailment_pairs` routes the
right string for structured pairs.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import DataError
from ..pairs import EntailmentPair

CONSUMES_HYPOTHESIS = "hypothesis"
CONSUMES_LABEL = "label"


class Scorer:
    """Base scorer: subclasses implement `score_one` or override `score_batch`."""

    consumes: str = CONSUMES_HYPOTHESIS

    def score_one(self, premise: str, text: str) -> float:
        raise NotImplementedError

    def score_batch(self, batch: Sequence[tuple[str, str]]) -> list[float]:
        """Score (premise, text) pairs; output aligns with the input order."""
        return [self.score_one(premise, text) for premise, text in batch]

    def score_entailment_pairs(self, pairs: Sequence[EntailmentPair]) -> list[float]:
        batch = [(p.premise, self._text_for(p)) for p in pairs]
        probs = self.score_batch(batch)
        if len(probs) != len(batch):
            raise DataError(
                f"scorer returned {len(probs)} probabilities for {len(batch)} pairs"
            )
        for p in probs:
            if not 0.0 <= p <= 1.0:
                raise DataError(f"scorer produced probability outside [0,1]: {p}")
        return probs

    def _text_for(self, pair: EntailmentPair) -> str:
        if self.consumes == CONSUMES_LABEL:
            return pair.hypothesis.label
        return pair.hypothesis.text


def clipped_unit(value: float) -> float:
    """Clamp tiny floating-point excursions back into [0, 1]."""
    if value < 0.0:
        return 0.0 if value > -1e-12 else value
    if value > 1.0:
        return 1.0 if value < 1.0 + 1e-12 else value
    return value
