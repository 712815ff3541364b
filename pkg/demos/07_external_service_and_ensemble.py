"""Scoring through the HTTP wire protocol, and ensembling scorers.

The external scorer POSTs {"pairs": [{id, premise, hypothesis}, ...]} to
<endpoint>/score and reads {"scores": [{id, entail}, ...]}, matching
responses by id. Here a bundled in-process mock stands in for a real
model service; an ensemble then combines it with a word-vector scorer by
summing per-pair binary distributions and re-normalizing with a softmax.
"""

from zentail import (
    EnsembleScorer,
    ExternalScorer,
    WordVectorTable,
    ensemble,
    external_score,
    validate_endpoint,
)
from zentail.scorers import EmbeddingScorer
from zentail.testing import MockScoringServer

with MockScoringServer() as server:  # token-overlap toy model
    print("endpoint:", server.url)

    probs = external_score(
        server.url,
        [
            ("a man is sleeping on the couch", "a man is sleeping"),
            ("a man is sleeping on the couch", "the stock market crashed"),
        ],
    )
    print("external scores:", [round(p, 3) for p in probs])

    validate_endpoint(server.url, n_pairs=50)
    print("protocol validator: 50-pair probe passed")

    table = WordVectorTable({"man": (1.0, 0.2), "sleeping": (0.8, 0.1), "market": (0.0, 1.0)})
    combined = EnsembleScorer([ExternalScorer(server.url), EmbeddingScorer(table)])
    out = combined.score_batch([("a man is sleeping on the couch", "a man is sleeping")])
    print("ensemble score:", round(out[0], 3))

print("\nensembling two binary distributions directly:")
print("  (0.8, 0.2) + (0.6, 0.4) ->", tuple(round(x, 4) for x in ensemble([(0.8, 0.2), (0.6, 0.4)])))
