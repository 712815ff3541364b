"""Word-vector cosine baseline.

Text and label are each represented as the element-wise sum of their
tokens' vectors; the entailment probability is the cosine similarity
mapped into [0, 1] via (cosine + 1) / 2. Cosine is scale-invariant, so any
positive rescaling of the vector table leaves scores unchanged. Tokens
missing from the table are skipped; if either side ends up with a zero
vector the score is 0.0, signalling the out-of-vocabulary degenerate case.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from ..errors import DataError
from ..tokenize import tokenize
from .base import CONSUMES_LABEL, Scorer, clipped_unit


class WordVectorTable:
    """Dense word vectors of one fixed dimension."""

    def __init__(self, vectors: Mapping[str, Sequence[float]]) -> None:
        if not vectors:
            raise DataError("word-vector table is empty")
        self.vectors: dict[str, np.ndarray] = {}
        self.dim = -1
        for token, vec in vectors.items():
            arr = np.asarray(vec, dtype=np.float64)
            if arr.ndim != 1:
                raise DataError(f"vector for token {token!r} is not one-dimensional")
            if self.dim == -1:
                self.dim = arr.shape[0]
            elif arr.shape[0] != self.dim:
                raise DataError(
                    f"vector for token {token!r} has dimension {arr.shape[0]}, "
                    f"expected {self.dim}"
                )
            self.vectors[token.lower()] = arr

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self.vectors

    def sum_vector(self, text: str) -> np.ndarray:
        """Element-wise sum of the vectors of the text's in-vocabulary tokens."""
        total = np.zeros(self.dim, dtype=np.float64)
        for token in tokenize(text):
            vec = self.vectors.get(token)
            if vec is not None:
                total += vec
        return total

    @classmethod
    def from_file(cls, path: str | Path) -> "WordVectorTable":
        """Read the plain-text format `token v1 v2 ... vd`, one entry per
        line, with an optional `count dim` header line."""
        vectors: dict[str, list[float]] = {}
        with open(path, "r", encoding="utf-8") as fp:
            for lineno, line in enumerate(fp, start=1):
                parts = line.rstrip("\n").split()
                if not parts:
                    continue
                if lineno == 1 and len(parts) == 2:
                    try:
                        int(parts[0]), int(parts[1])
                        continue  # header line
                    except ValueError:
                        pass
                token, values = parts[0], parts[1:]
                if not values:
                    raise DataError(f"{path}: line {lineno}: no vector components")
                try:
                    vectors[token] = [float(v) for v in values]
                except ValueError as exc:
                    raise DataError(
                        f"{path}: line {lineno}: non-numeric vector component"
                    ) from exc
        return cls(vectors)


def cosine_to_probability(cosine: float) -> float:
    return clipped_unit((cosine + 1.0) / 2.0)


def embedding_cosine_score(table: WordVectorTable, premise: str, label_text: str) -> float:
    v_text = table.sum_vector(premise)
    v_label = table.sum_vector(label_text)
    n_text = float(np.linalg.norm(v_text))
    n_label = float(np.linalg.norm(v_label))
    if n_text == 0.0 or n_label == 0.0:
        return 0.0
    cosine = float(v_text @ v_label) / (n_text * n_label)
    return cosine_to_probability(cosine)


class EmbeddingScorer(Scorer):
    consumes = CONSUMES_LABEL

    def __init__(self, table: WordVectorTable) -> None:
        self.table = table

    @classmethod
    def from_file(cls, path: str | Path) -> "EmbeddingScorer":
        return cls(WordVectorTable.from_file(path))

    def score_one(self, premise: str, text: str) -> float:
        return embedding_cosine_score(self.table, premise, text)
