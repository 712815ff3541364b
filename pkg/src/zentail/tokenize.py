"""The framework's single tokenizer.

Every lexical scorer (word vectors, concept indexing) shares this function
so that scores are comparable and reproducible: lowercase, split on
whitespace and punctuation, no stemming, no stopword removal.
"""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase `text` and return its alphanumeric token runs."""
    return _TOKEN_RE.findall(text.lower())
