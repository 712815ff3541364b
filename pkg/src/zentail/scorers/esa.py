"""Concept-space baseline over a user-supplied (title, body) corpus.

Builds an inverted index mapping tokens to the articles containing them.
A text is projected into the article ("concept") space as the sum of its
tokens' TF-IDF rows, where the weight of token t in article a is
tf(t, a) * ln(N / df(t)) with natural log and raw term frequency. Two
projections are compared by cosine, mapped into [0, 1] via (c + 1) / 2.

Concept vectors are kept sparse; a configurable top-k cutoff (default
1000) bounds vector size on large corpora and has no effect at toy scale.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Sequence

from ..errors import DataError
from ..jsonio import read_json, write_json
from ..tokenize import tokenize
from .base import CONSUMES_LABEL, Scorer, clipped_unit

logger = logging.getLogger(__name__)

INDEX_FORMAT_VERSION = 1
DEFAULT_TOP_K = 1000


class ConceptIndex:
    """Inverted index over a titled corpus.

    articles: ordered article titles; postings: token -> [(article index,
    term frequency)]; vocabulary: token -> document frequency, which by
    construction equals the posting-list length.
    """

    def __init__(
        self,
        articles: Sequence[str],
        postings: dict[str, list[tuple[int, int]]],
    ) -> None:
        self.articles = list(articles)
        self.postings = postings
        self.vocabulary = {token: len(plist) for token, plist in postings.items()}
        for token, plist in postings.items():
            for article_idx, tf in plist:
                if not 0 <= article_idx < len(self.articles):
                    raise DataError(
                        f"posting for token {token!r} references article "
                        f"{article_idx}, but only {len(self.articles)} exist"
                    )
                if tf <= 0:
                    raise DataError(f"posting for token {token!r} has nonpositive tf")

    @property
    def n_articles(self) -> int:
        return len(self.articles)

    def token_weights(self, token: str) -> dict[int, float]:
        """TF-IDF weight of `token` in each article containing it."""
        plist = self.postings.get(token)
        if not plist:
            return {}
        idf = math.log(self.n_articles / self.vocabulary[token])
        return {article_idx: tf * idf for article_idx, tf in plist}

    def concept_vector(self, text: str, top_k: int | None = DEFAULT_TOP_K) -> dict[int, float]:
        """Project `text` into concept space: sum of its tokens' TF-IDF rows.

        Entries of value zero (tokens present in every article) are dropped;
        when `top_k` is set, only the k largest-weight concepts survive.
        """
        vec: dict[int, float] = {}
        for token in tokenize(text):
            for article_idx, w in self.token_weights(token).items():
                if w != 0.0:
                    vec[article_idx] = vec.get(article_idx, 0.0) + w
        if top_k is not None and len(vec) > top_k:
            kept = sorted(vec.items(), key=lambda kv: (-kv[1], kv[0]))[:top_k]
            vec = dict(kept)
        return vec

    def save(self, path: str | Path) -> None:
        write_json(
            path,
            {
                "format_version": INDEX_FORMAT_VERSION,
                "articles": self.articles,
                "postings": {
                    token: [[idx, tf] for idx, tf in plist]
                    for token, plist in self.postings.items()
                },
            },
        )

    @classmethod
    def load(cls, path: str | Path) -> "ConceptIndex":
        doc = read_json(path)
        version = doc.get("format_version")
        if version != INDEX_FORMAT_VERSION:
            raise DataError(
                f"{path}: unsupported concept-index format_version {version!r}"
            )
        postings = {
            token: [(int(idx), int(tf)) for idx, tf in plist]
            for token, plist in doc["postings"].items()
        }
        return cls(articles=doc["articles"], postings=postings)


def esa_build(corpus: Sequence[tuple[str, str]]) -> ConceptIndex:
    """Index a (title, body) corpus. Duplicate titles are an error; articles
    with empty bodies are dropped with a warning."""
    if not corpus:
        raise DataError("cannot build a concept index from an empty corpus")
    titles: list[str] = []
    seen_titles: set[str] = set()
    bodies: list[str] = []
    for title, body in corpus:
        if title in seen_titles:
            raise DataError(f"duplicate article title {title!r}")
        seen_titles.add(title)
        if not tokenize(body):
            logger.warning("dropping article %r: empty body", title)
            continue
        titles.append(title)
        bodies.append(body)
    if not titles:
        raise DataError("all articles had empty bodies; nothing to index")
    postings: dict[str, list[tuple[int, int]]] = {}
    for article_idx, body in enumerate(bodies):
        counts: dict[str, int] = {}
        for token in tokenize(body):
            counts[token] = counts.get(token, 0) + 1
        for token, tf in counts.items():
            postings.setdefault(token, []).append((article_idx, tf))
    return ConceptIndex(articles=titles, postings=postings)


def _sparse_cosine(u: dict[int, float], v: dict[int, float]) -> float:
    dot = sum(w * v[k] for k, w in u.items() if k in v)
    nu = math.sqrt(sum(w * w for w in u.values()))
    nv = math.sqrt(sum(w * w for w in v.values()))
    if nu == 0.0 or nv == 0.0:
        return -1.0  # maps to probability 0: degenerate empty projection
    return dot / (nu * nv)


def esa_score(
    index: ConceptIndex,
    premise: str,
    label_text: str,
    top_k: int | None = DEFAULT_TOP_K,
) -> float:
    u = index.concept_vector(premise, top_k=top_k)
    v = index.concept_vector(label_text, top_k=top_k)
    if not u or not v:
        return 0.0
    return clipped_unit((_sparse_cosine(u, v) + 1.0) / 2.0)


class EsaScorer(Scorer):
    consumes = CONSUMES_LABEL

    def __init__(self, index: ConceptIndex, top_k: int | None = DEFAULT_TOP_K) -> None:
        self.index = index
        self.top_k = top_k

    @classmethod
    def from_file(cls, path: str | Path, top_k: int | None = DEFAULT_TOP_K) -> "EsaScorer":
        return cls(ConceptIndex.load(path), top_k=top_k)

    def score_one(self, premise: str, text: str) -> float:
        return esa_score(self.index, premise, text, top_k=self.top_k)
