"""Pluggable entailment scorers and the spec-string factory.

Scorer specs are compact strings used in run configs and on the command
line:

    majority
    embedding:<vectors path>
    esa:<index path>
    external:<endpoint url>
    ensemble:[<spec>,<spec>,...]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import ConfigError
from ..pairs import EntailmentPair
from ..types import AspectSpec, Instance, ScoreTable
from .base import CONSUMES_HYPOTHESIS, CONSUMES_LABEL, Scorer
from .embedding import EmbeddingScorer, WordVectorTable, embedding_cosine_score
from .ensemble import EnsembleScorer, ensemble
from .esa import ConceptIndex, EsaScorer, esa_build, esa_score
from .external import ExternalScorer, external_score, validate_endpoint
from .majority import MajorityScorer

__all__ = [
    "CONSUMES_HYPOTHESIS",
    "CONSUMES_LABEL",
    "ConceptIndex",
    "EmbeddingScorer",
    "EnsembleScorer",
    "EsaScorer",
    "ExternalScorer",
    "MajorityScorer",
    "Scorer",
    "ScorerContext",
    "WordVectorTable",
    "build_scorer",
    "embedding_cosine_score",
    "ensemble",
    "esa_build",
    "esa_score",
    "external_score",
    "score_pairs",
    "validate_endpoint",
]


@dataclass
class ScorerContext:
    """Everything a scorer spec might need to come to life."""

    aspect: AspectSpec
    train_instances: Sequence[Instance] | None = None
    parallel: int = 1
    endpoint_override: str | None = None


def split_ensemble_members(body: str) -> list[str]:
    """Split `a,b,c` from an `ensemble:[...]` body at top-level commas."""
    members: list[str] = []
    depth = 0
    current = ""
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            members.append(current.strip())
            current = ""
        else:
            current += ch
    if current.strip():
        members.append(current.strip())
    return [m for m in members if m]


def build_scorer(spec: str, ctx: ScorerContext) -> Scorer:
    spec = spec.strip()
    if spec == "majority":
        if ctx.train_instances:
            return MajorityScorer.from_train(ctx.aspect, ctx.train_instances)
        return MajorityScorer.uniform(ctx.aspect)
    kind, sep, arg = spec.partition(":")
    if not sep or not arg:
        raise ConfigError(f"malformed scorer spec: {spec!r}")
    if kind == "embedding":
        return EmbeddingScorer.from_file(arg)
    if kind == "esa":
        return EsaScorer.from_file(arg)
    if kind == "external":
        endpoint = ctx.endpoint_override or arg
        return ExternalScorer(endpoint, parallel=ctx.parallel)
    if kind == "ensemble":
        if not (arg.startswith("[") and arg.endswith("]")):
            raise ConfigError(f"ensemble spec must be ensemble:[...], got {spec!r}")
        member_specs = split_ensemble_members(arg[1:-1])
        if not member_specs:
            raise ConfigError("ensemble spec lists no member scorers")
        return EnsembleScorer([build_scorer(m, ctx) for m in member_specs])
    raise ConfigError(f"unknown scorer kind {kind!r} in spec {spec!r}")


def score_pairs(scorer: Scorer, pairs: Sequence[EntailmentPair]) -> ScoreTable:
    """Score structured pairs into a ScoreTable keyed by
    (instance, label, mode)."""
    table = ScoreTable()
    probs = scorer.score_entailment_pairs(pairs)
    for pair, prob in zip(pairs, probs):
        table.set(pair.instance_id, pair.hypothesis.label, pair.hypothesis.mode, prob)
    return table
