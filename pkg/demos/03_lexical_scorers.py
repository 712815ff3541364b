"""The no-training baselines: word-vector cosine and concept indexing.

Both compare the document against label names and map cosine similarity
into a probability via (c + 1) / 2. The word-vector scorer sums token
vectors; the concept scorer projects texts into the article space of a
user-supplied titled corpus via TF-IDF.
"""

import math

from zentail import WordVectorTable, embedding_cosine_score, esa_build, esa_score

# --- word vectors -----------------------------------------------------------
table = WordVectorTable(
    {
        "goal": (1.0, 0.0, 0.1),
        "match": (0.9, 0.1, 0.1),
        "sports": (1.0, 0.05, 0.1),
        "vote": (0.0, 1.0, 0.1),
        "ballot": (0.05, 0.95, 0.1),
        "politics": (0.0, 1.0, 0.1),
    }
)
doc = "late goal decides the match"
for label in ("sports", "politics"):
    p = embedding_cosine_score(table, doc, label)
    print(f"embedding p({label!r} | {doc!r}) = {p:.4f}")

# --- concept index ----------------------------------------------------------
corpus = [
    ("Football", "goal match striker striker goal league"),
    ("Elections", "vote ballot campaign vote"),
    ("Weather", "rain wind sunshine forecast"),
    ("Stadiums", "match crowd goal arena"),
    ("Parliament", "ballot vote debate law"),
]
index = esa_build(corpus)
print("\narticles:", index.articles)

# a token appearing twice in one of five articles (and nowhere else) gets
# weight 2 * ln(5)
print("weight of 'striker':", index.token_weights("striker"), "  2*ln5 =", 2 * math.log(5))

# labels score through their corpus footprint; a label absent from the
# corpus has an empty projection and scores 0
for label in ("goal", "vote", "sports"):
    p = esa_score(index, doc, label)
    print(f"concept   p({label!r} | {doc!r}) = {p:.4f}")
