"""Zero-shot text classification as textual entailment.

Labels become natural-language hypotheses, a pluggable scorer estimates
the probability that each document entails each hypothesis, and a
seen/unseen decision policy turns the score table into predictions that
are evaluated with accuracy or label-wise weighted F1.
"""

from .errors import ConfigError, DataError, ProtocolError, TransportError, ZentailError
from .hypotheses import GlossLexicon, Hypothesis, hypothesis_set, render_definition, render_word
from .metrics import EvalReport, accuracy, accuracy_report, seen_unseen_breakdown, weighted_f1
from .pairs import EntailmentPair, build_eval_pairs, build_train_pairs, read_pairs, write_pairs
from .pipeline import RunConfig, export_pairs, run_pipeline
from .policy import (
    PolicyConfig,
    Prediction,
    aggregate_modes,
    decide_fully_unseen,
    decide_multi,
    decide_single,
    predict,
)
from .scorers import (
    ConceptIndex,
    EmbeddingScorer,
    EnsembleScorer,
    EsaScorer,
    ExternalScorer,
    MajorityScorer,
    Scorer,
    ScorerContext,
    WordVectorTable,
    build_scorer,
    embedding_cosine_score,
    ensemble,
    esa_build,
    esa_score,
    external_score,
    score_pairs,
    validate_endpoint,
)
from .splits import SplitScheme, build_splits, ingest, read_scheme, verify_splits, write_splits
from .types import (
    AspectSpec,
    Instance,
    Label,
    ScoreTable,
    SeenUnseenPartition,
    partition_for,
    read_aspect,
    read_instances,
    validate_aspect,
    validate_partition,
)

__version__ = "0.1.0"

__all__ = [
    "AspectSpec",
    "ConceptIndex",
    "ConfigError",
    "DataError",
    "EmbeddingScorer",
    "EnsembleScorer",
    "EntailmentPair",
    "EsaScorer",
    "EvalReport",
    "ExternalScorer",
    "GlossLexicon",
    "Hypothesis",
    "Instance",
    "Label",
    "MajorityScorer",
    "PolicyConfig",
    "Prediction",
    "ProtocolError",
    "RunConfig",
    "ScoreTable",
    "Scorer",
    "ScorerContext",
    "SeenUnseenPartition",
    "SplitScheme",
    "TransportError",
    "WordVectorTable",
    "ZentailError",
    "accuracy",
    "accuracy_report",
    "aggregate_modes",
    "build_eval_pairs",
    "build_scorer",
    "build_splits",
    "build_train_pairs",
    "decide_fully_unseen",
    "decide_multi",
    "decide_single",
    "embedding_cosine_score",
    "ensemble",
    "esa_build",
    "esa_score",
    "export_pairs",
    "external_score",
    "hypothesis_set",
    "ingest",
    "partition_for",
    "predict",
    "read_aspect",
    "read_instances",
    "read_pairs",
    "read_scheme",
    "render_definition",
    "render_word",
    "run_pipeline",
    "score_pairs",
    "seen_unseen_breakdown",
    "validate_aspect",
    "validate_endpoint",
    "validate_partition",
    "verify_splits",
    "weighted_f1",
    "write_pairs",
    "write_splits",
]
