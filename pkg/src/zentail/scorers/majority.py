"""Majority-class baseline.

Assigns probability 1.0 to hypotheses of the single most frequent gold
label and 0.0 to everything else. Frequencies come from a training split
when one exists; without training data the distribution is uniform and
the tie-break (earlier position in the aspect's label order) decides.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping

from ..errors import DataError
from ..types import AspectSpec, Instance, canonical
from .base import CONSUMES_LABEL, Scorer


class MajorityScorer(Scorer):
    consumes = CONSUMES_LABEL

    def __init__(self, aspect: AspectSpec, stats: Mapping[str, int]) -> None:
        if not stats:
            raise DataError("majority scorer needs nonempty gold-label statistics")
        counts = {canonical(name): int(n) for name, n in stats.items()}
        best_name = None
        best_count = -1
        for name in aspect.all_label_names:
            count = counts.get(canonical(name), 0)
            if count > best_count:
                best_name, best_count = name, count
        assert best_name is not None
        self.majority_label = best_name
        self._majority_key = canonical(best_name)

    @classmethod
    def from_train(cls, aspect: AspectSpec, instances: Iterable[Instance]) -> "MajorityScorer":
        stats: Counter[str] = Counter()
        for inst in instances:
            for g in inst.gold:
                stats[canonical(g)] += 1
        return cls(aspect, stats)

    @classmethod
    def uniform(cls, aspect: AspectSpec) -> "MajorityScorer":
        return cls(aspect, {name: 1 for name in aspect.all_label_names})

    def score_one(self, premise: str, text: str) -> float:
        return 1.0 if canonical(text) == self._majority_key else 0.0
