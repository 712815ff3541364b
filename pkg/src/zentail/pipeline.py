"""End-to-end run orchestration.

A run executes: (optionally) build splits from raw data, generate
hypotheses, build evaluation pairs, score them, decide labels, and
evaluate. Every stage persists its artifact under the run's output
directory, so stages can also be invoked one at a time and produce the
same bytes. An `INCOMPLETE` marker exists in the output directory while a
run is in flight or after a failure; a finished run removes it.

Identical inputs (config, data files, seed) always reproduce identical
output bytes.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import ConfigError, DataError, ZentailError
from .hypotheses import GlossLexicon, hypothesis_set, hypothesis_to_dict
from .jsonio import read_json, write_jsonl
from .metrics import (
    ACCURACY,
    WEIGHTED_F1,
    EvalReport,
    accuracy_report,
    maps_from_instances,
    maps_from_predictions,
    weighted_f1,
)
from .pairs import build_eval_pairs, build_train_pairs, write_pairs
from .policy import PolicyConfig, predict, write_predictions
from .scorers import ScorerContext, build_scorer, score_pairs, split_ensemble_members
from .splits import build_splits, ingest, read_scheme, verify_splits, write_splits
from .types import (
    MULTI_LABEL,
    AspectSpec,
    Instance,
    SeenUnseenPartition,
    partition_for,
    read_aspect,
    read_instances,
    read_partition,
    validate_partition,
    write_partition,
)

logger = logging.getLogger(__name__)

ENDPOINT_ENV_VAR = "ZENTAIL_EXTERNAL_ENDPOINT"
CONFIG_VERSION = 1
INCOMPLETE_MARKER = "INCOMPLETE"

METRIC_NAMES = {"acc": ACCURACY, "wf1": WEIGHTED_F1}

_KNOWN_KEYS = {
    "version",
    "aspect",
    "mode",
    "scorer",
    "out_dir",
    "metric",
    "glosses",
    "policy",
    "seed",
    "parallel",
    "scheme",
    "raw",
    "eval_split",
    "eval_data",
    "train_data",
    "train_version",
    "partition",
}


class PipelineError(ZentailError):
    """A stage failed; the message names the stage and the cause."""


@dataclass
class RunConfig:
    aspect_path: str
    mode: str
    scorer_spec: str
    out_dir: str
    metric: str | None = None
    glosses_path: str | None = None
    policy: PolicyConfig = field(default_factory=PolicyConfig)
    seed: int | None = None
    parallel: int = 1
    scheme_path: str | None = None
    raw_path: str | None = None
    eval_split: str = "test"
    eval_data: str | None = None
    train_data: str | None = None
    train_version: str | None = None
    partition_path: str | None = None

    @classmethod
    def from_dict(cls, doc: dict, base_dir: str | Path = ".") -> "RunConfig":
        unknown = set(doc) - _KNOWN_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if doc.get("version") != CONFIG_VERSION:
            raise ConfigError(f"config version must be {CONFIG_VERSION}")
        for key in ("aspect", "mode", "scorer", "out_dir"):
            if key not in doc:
                raise ConfigError(f"config missing required key {key!r}")
            if not isinstance(doc[key], str):
                raise ConfigError(f"config key {key!r} must be a string")
        policy_doc = doc.get("policy", {})
        if not isinstance(policy_doc, dict):
            raise ConfigError("config key 'policy' must be an object")
        unknown_policy = set(policy_doc) - {"alpha", "positive_threshold"}
        if unknown_policy:
            raise ConfigError(f"unknown policy keys: {sorted(unknown_policy)}")
        base = Path(base_dir)

        def rel(value: str | None) -> str | None:
            if value is None:
                return None
            path = Path(value)
            return str(path if path.is_absolute() else base / path)

        return cls(
            aspect_path=rel(doc["aspect"]),
            mode=doc["mode"],
            scorer_spec=_rebase_scorer_spec(doc["scorer"], base),
            out_dir=rel(doc["out_dir"]),
            metric=doc.get("metric"),
            glosses_path=rel(doc.get("glosses")),
            policy=PolicyConfig(
                alpha=policy_doc.get("alpha", PolicyConfig.alpha),
                positive_threshold=policy_doc.get(
                    "positive_threshold", PolicyConfig.positive_threshold
                ),
            ),
            seed=doc.get("seed"),
            parallel=int(doc.get("parallel", 1)),
            scheme_path=rel(doc.get("scheme")),
            raw_path=rel(doc.get("raw")),
            eval_split=doc.get("eval_split", "test"),
            eval_data=rel(doc.get("eval_data")),
            train_data=rel(doc.get("train_data")),
            train_version=doc.get("train_version"),
            partition_path=rel(doc.get("partition")),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        return cls.from_dict(read_json(path), base_dir=Path(path).parent)

    def validate(self) -> None:
        if self.mode not in ("word", "definition", "combination"):
            raise ConfigError(f"mode must be word|definition|combination, got {self.mode!r}")
        if self.metric is not None and self.metric not in METRIC_NAMES:
            raise ConfigError(f"metric must be one of {sorted(METRIC_NAMES)}")
        has_scheme = self.scheme_path is not None and self.raw_path is not None
        if bool(self.scheme_path) != bool(self.raw_path):
            raise ConfigError("config keys 'scheme' and 'raw' must be given together")
        if not has_scheme and self.eval_data is None:
            raise ConfigError("config needs either scheme+raw or eval_data")
        for label, path in (
            ("aspect", self.aspect_path),
            ("glosses", self.glosses_path),
            ("scheme", self.scheme_path),
            ("raw", self.raw_path),
            ("eval_data", self.eval_data),
            ("train_data", self.train_data),
            ("partition", self.partition_path),
        ):
            if path is not None and not Path(path).exists():
                raise ConfigError(f"config key {label!r}: no such file: {path}")
        _validate_scorer_paths(self.scorer_spec)


def _rebase_scorer_spec(spec: str, base: Path) -> str:
    """Resolve relative file paths inside a scorer spec against `base`."""
    spec = spec.strip()
    kind, sep, arg = spec.partition(":")
    if not sep:
        return spec
    if kind in ("embedding", "esa"):
        path = Path(arg)
        return f"{kind}:{path if path.is_absolute() else base / path}"
    if kind == "ensemble" and arg.startswith("[") and arg.endswith("]"):
        members = [
            _rebase_scorer_spec(m, base) for m in split_ensemble_members(arg[1:-1])
        ]
        return "ensemble:[" + ",".join(members) + "]"
    return spec


def _validate_scorer_paths(spec: str) -> None:
    kind, sep, arg = spec.strip().partition(":")
    if not sep:
        return
    if kind in ("embedding", "esa") and not Path(arg).exists():
        raise ConfigError(f"scorer spec {spec!r}: no such file: {arg}")
    if kind == "ensemble" and arg.startswith("[") and arg.endswith("]"):
        for member in split_ensemble_members(arg[1:-1]):
            _validate_scorer_paths(member)


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ZentailError as exc:
        raise type(exc)(f"stage {name!r}: {exc}") from exc
    except OSError as exc:
        raise PipelineError(f"stage {name!r}: {exc}") from exc


def _load_lexicon(config: RunConfig) -> GlossLexicon | None:
    if config.glosses_path is None:
        if config.mode in ("definition", "combination"):
            raise ConfigError(f"mode {config.mode!r} needs a glosses file")
        return None
    return GlossLexicon.from_file(config.glosses_path)


@dataclass
class PreparedData:
    eval_instances: list[Instance]
    train_instances: list[Instance] | None
    partition: SeenUnseenPartition


def _prepare_data(config: RunConfig, aspect: AspectSpec, out: Path) -> PreparedData:
    train_instances = None
    if config.scheme_path:
        scheme = read_scheme(config.scheme_path)
        result = ingest(config.raw_path, scheme)
        if result.dropped_multi_label:
            logger.info(
                "ingest dropped %d multi-label instances", result.dropped_multi_label
            )
        splits = build_splits(result.instances, scheme, seed=config.seed)
        violations = verify_splits(splits, scheme)
        if violations:
            raise DataError(
                "built splits violate the scheme: " + "; ".join(violations[:5])
            )
        write_splits(splits, out / "splits")
        if config.eval_split not in splits:
            raise ConfigError(f"eval_split {config.eval_split!r} not in scheme")
        eval_instances = splits[config.eval_split]
        if config.train_version is not None:
            split_name = scheme.train_split(config.train_version)
            if split_name not in splits:
                raise ConfigError(f"train_version {config.train_version!r} not in scheme")
            train_instances = splits[split_name]
            seen: Sequence[str] = scheme.seen[config.train_version]
        else:
            seen = ()
    else:
        eval_instances = read_instances(config.eval_data)
        if config.train_data:
            train_instances = read_instances(config.train_data)
        seen = ()
    if config.partition_path:
        partition = read_partition(config.partition_path)
    else:
        partition = partition_for(aspect, seen)
    validate_partition(partition, aspect)
    return PreparedData(eval_instances, train_instances, partition)


def run_pipeline(config: RunConfig) -> EvalReport:
    config.validate()
    aspect = _stage("load-aspect", read_aspect, config.aspect_path)
    lexicon = _stage("load-glosses", _load_lexicon, config)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    marker = out / INCOMPLETE_MARKER
    marker.write_text("run in progress or failed\n")

    data = _stage("build-splits", _prepare_data, config, aspect, out)
    write_partition(out / "partition.json", data.partition)

    hyps = _stage("gen-hypotheses", hypothesis_set, aspect, config.mode, lexicon)
    write_jsonl(out / "hypotheses.jsonl", (hypothesis_to_dict(h) for h in hyps))

    pairs = _stage(
        "build-pairs", build_eval_pairs, data.eval_instances, aspect, config.mode, lexicon
    )
    write_pairs(out / "pairs.jsonl", pairs)

    ctx = ScorerContext(
        aspect=aspect,
        train_instances=data.train_instances,
        parallel=config.parallel,
        endpoint_override=os.environ.get(ENDPOINT_ENV_VAR),
    )
    scorer = _stage("score", build_scorer, config.scorer_spec, ctx)
    table = _stage("score", score_pairs, scorer, pairs)
    table.to_file(out / "scores.jsonl")

    instance_ids = [inst.id for inst in data.eval_instances]
    predictions = _stage(
        "predict", predict, table, instance_ids, aspect, data.partition, config.policy
    )
    write_predictions(out / "predictions.jsonl", predictions)

    metric = config.metric
    if metric is None:
        metric = "wf1" if aspect.task_kind == MULTI_LABEL else "acc"
    golds = maps_from_instances(data.eval_instances)
    preds = maps_from_predictions(predictions)
    labels = aspect.all_label_names
    partition = None if data.partition.fully_unseen else data.partition
    if METRIC_NAMES[metric] == ACCURACY:
        report = _stage("evaluate", accuracy_report, preds, golds, labels, partition)
    else:
        report = _stage("evaluate", weighted_f1, preds, golds, labels, partition)
    report.save(out / "report.json", out / "report.txt")

    marker.unlink()
    return report


def export_pairs(config: RunConfig, kind: str = "train") -> Path:
    """Write the entailment-pair file for `kind` ("train" or "eval").

    Training pairs need a training split (scheme + train_version, or
    train_data with an explicit partition file).
    """
    config.validate()
    aspect = read_aspect(config.aspect_path)
    lexicon = _load_lexicon(config)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    data = _prepare_data(config, aspect, out)
    if kind == "eval":
        pairs = build_eval_pairs(data.eval_instances, aspect, config.mode, lexicon)
        path = out / "eval_pairs.jsonl"
    elif kind == "train":
        if data.train_instances is None:
            raise ConfigError("exporting training pairs needs a training split")
        pairs = build_train_pairs(
            data.train_instances, aspect, data.partition, config.mode, lexicon
        )
        path = out / "train_pairs.jsonl"
    else:
        raise ConfigError(f"pair kind must be train or eval, got {kind!r}")
    write_pairs(path, pairs)
    return path
