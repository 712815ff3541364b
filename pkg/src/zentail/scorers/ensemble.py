"""Combine several scorers' binary distributions.

Each model contributes a two-class distribution (p_entail, p_non_entail).
The combined distribution is the element-wise sum across models passed
through a softmax over the two classes. Summation makes the result
invariant to model order; the softmax re-normalizes, so even a single
model's distribution is transformed rather than passed through.
"""

from __future__ import annotations

import math
from typing import Sequence

from ..errors import DataError
from ..pairs import EntailmentPair
from .base import Scorer

PAIR_SUM_TOLERANCE = 1e-6


def ensemble(
    distributions: Sequence[tuple[float, float]]
) -> tuple[float, float]:
    """Sum the two-class distributions, then softmax over the two classes."""
    if not distributions:
        raise DataError("ensemble needs at least one model distribution")
    total_entail = 0.0
    total_non = 0.0
    for p_entail, p_non in distributions:
        if abs((p_entail + p_non) - 1.0) > PAIR_SUM_TOLERANCE:
            raise DataError(
                f"model distribution ({p_entail}, {p_non}) does not sum to 1"
            )
        total_entail += p_entail
        total_non += p_non
    # Softmax over two logits, stabilized by subtracting the max.
    m = max(total_entail, total_non)
    e_entail = math.exp(total_entail - m)
    e_non = math.exp(total_non - m)
    z = e_entail + e_non
    return e_entail / z, e_non / z


class EnsembleScorer(Scorer):
    """Scorer that ensembles the outputs of its member scorers.

    Members may consume different texts (label names vs hypothesis
    sentences); each member applies its own choice, so structured-pair
    scoring is the canonical path. The raw `score_batch` contract is still
    honored by feeding every member the same given text.
    """

    def __init__(self, members: Sequence[Scorer]) -> None:
        if not members:
            raise DataError("ensemble needs at least one member scorer")
        self.members = list(members)

    def score_entailment_pairs(self, pairs: Sequence[EntailmentPair]) -> list[float]:
        member_probs = [m.score_entailment_pairs(pairs) for m in self.members]
        return self._combine(member_probs, len(pairs))

    def score_batch(self, batch: Sequence[tuple[str, str]]) -> list[float]:
        member_probs = [m.score_batch(batch) for m in self.members]
        return self._combine(member_probs, len(batch))

    @staticmethod
    def _combine(member_probs: list[list[float]], n: int) -> list[float]:
        out = []
        for i in range(n):
            dists = [(probs[i], 1.0 - probs[i]) for probs in member_probs]
            p_entail, _ = ensemble(dists)
            out.append(p_entail)
        return out
