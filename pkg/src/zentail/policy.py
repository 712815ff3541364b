"""Turn entailment probabilities into label predictions.

Seen labels had training data, so they are held to a harsher standard at
decision time: when positive seen and unseen labels compete, a seen label
only survives if it beats the top positive unseen label by more than the
margin `alpha`.

A label counts as positive when its aggregated probability strictly
exceeds `positive_threshold`. Aggregation over hypothesis modes takes the
maximum, so a label is positive as soon as any one of its hypotheses is.

All margin comparisons are written literally as `p_seen > p_unseen + alpha`
(and `p_seen < p_unseen + alpha` for demotion). Rewriting them as
`p_seen - p_unseen > alpha` is not equivalent in floating point and must
be avoided. Ties at exactly the margin go to the unseen label; ties in
probability between labels go to the earlier label in iteration order.

Single-label aspects always emit exactly one label (falling back to the
global argmax when nothing is positive). Multi-label aspects emit every
surviving positive label, or the none-label when nothing survives; the
none-label itself acts purely as that fallback and its own probability is
ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DataError
from .jsonio import read_jsonl, write_jsonl
from .types import (
    MULTI_LABEL,
    SINGLE_LABEL,
    AspectSpec,
    ScoreTable,
    SeenUnseenPartition,
    canonical,
)

DEFAULT_ALPHA = 0.05
DEFAULT_POSITIVE_THRESHOLD = 0.5


@dataclass(frozen=True)
class PolicyConfig:
    alpha: float = DEFAULT_ALPHA
    positive_threshold: float = DEFAULT_POSITIVE_THRESHOLD

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha < 1.0:
            raise DataError(f"alpha must be in [0, 1), got {self.alpha}")
        if not 0.0 < self.positive_threshold < 1.0:
            raise DataError(
                f"positive_threshold must be in (0, 1), got {self.positive_threshold}"
            )


@dataclass(frozen=True)
class Prediction:
    instance_id: str
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            raise DataError(f"prediction for {self.instance_id!r} has no labels")


def aggregate_modes(table: ScoreTable, instance_id: str, label: str) -> float:
    """Best probability across the label's available hypothesis modes."""
    modes = table.modes_for(instance_id, label)
    if not modes:
        raise DataError(f"no scores for instance {instance_id!r}, label {label!r}")
    return max(modes.values())


def _argmax(probs: Mapping[str, float]) -> str:
    best = None
    best_p = -1.0
    for name, p in probs.items():
        if p > best_p:
            best, best_p = name, p
    assert best is not None
    return best


def _top(probs: Mapping[str, float], names: Iterable[str]) -> str:
    sub = {name: probs[name] for name in names}
    return _argmax(sub)


def decide_single(
    probs: Mapping[str, float],
    partition: SeenUnseenPartition,
    config: PolicyConfig,
) -> str:
    """Pick one label for a single-label aspect.

    When positive seen and unseen labels coexist, the top seen label s*
    wins only if p(s*) > p(u*) + alpha against the top unseen label u*;
    otherwise u* wins. In every other situation the global argmax wins,
    which is also the highest-probability positive label whenever any
    label is positive.
    """
    if not probs:
        raise DataError("decide_single needs probabilities for every label")
    thr = config.positive_threshold
    pos_seen = [l for l, p in probs.items() if p > thr and partition.is_seen(l)]
    pos_unseen = [l for l, p in probs.items() if p > thr and not partition.is_seen(l)]
    if pos_seen and pos_unseen:
        s_star = _top(probs, pos_seen)
        u_star = _top(probs, pos_unseen)
        if probs[s_star] > probs[u_star] + config.alpha:
            return s_star
        return u_star
    return _argmax(probs)


def decide_multi(
    probs: Mapping[str, float],
    partition: SeenUnseenPartition,
    config: PolicyConfig,
    none_label: str,
) -> tuple[str, ...]:
    """Pick the surviving positive labels for a multi-label aspect.

    Starting from all positive labels, each positive seen label s is
    demoted when p(s) < p(u*) + alpha against the top positive unseen
    label u*. If nothing survives, the none-label is the prediction.
    """
    if not probs:
        raise DataError("decide_multi needs probabilities for every label")
    if not none_label:
        raise DataError("multi-label decisions need a none-label fallback")
    thr = config.positive_threshold
    none_key = canonical(none_label)
    positives = [
        l for l, p in probs.items() if p > thr and canonical(l) != none_key
    ]
    pos_seen = [l for l in positives if partition.is_seen(l)]
    pos_unseen = [l for l in positives if not partition.is_seen(l)]
    if pos_seen and pos_unseen:
        u_star = _top(probs, pos_unseen)
        kept_seen = [s for s in pos_seen if not (probs[s] < probs[u_star] + config.alpha)]
        final = [l for l in positives if l in set(kept_seen) or l in set(pos_unseen)]
    else:
        final = positives
    if not final:
        return (none_label,)
    return tuple(final)


def decide_fully_unseen(
    probs: Mapping[str, float],
    config: PolicyConfig,
    task_kind: str,
    none_label: str | None = None,
) -> tuple[str, ...]:
    """Decision rule when no label had training data: plain argmax for
    single-label aspects, thresholding with the none fallback for
    multi-label aspects."""
    if not probs:
        raise DataError("decide_fully_unseen needs probabilities for every label")
    if task_kind == SINGLE_LABEL:
        return (_argmax(probs),)
    if task_kind != MULTI_LABEL:
        raise DataError(f"unknown task kind {task_kind!r}")
    if not none_label:
        raise DataError("multi-label decisions need a none-label fallback")
    thr = config.positive_threshold
    none_key = canonical(none_label)
    positives = tuple(
        l for l, p in probs.items() if p > thr and canonical(l) != none_key
    )
    if positives:
        return positives
    return (none_label,)


def probabilities_for(
    table: ScoreTable, instance_id: str, aspect: AspectSpec
) -> dict[str, float]:
    """Aggregated probability per label, in aspect label order (none-label
    last). Missing labels raise, so coverage violations surface early."""
    return {
        name: aggregate_modes(table, instance_id, name)
        for name in aspect.all_label_names
    }


def predict(
    table: ScoreTable,
    instance_ids: Sequence[str],
    aspect: AspectSpec,
    partition: SeenUnseenPartition,
    config: PolicyConfig,
) -> list[Prediction]:
    """Apply the decision policy to every instance in the table."""
    none_name = aspect.none_label.name if aspect.none_label else None
    predictions = []
    for iid in instance_ids:
        probs = probabilities_for(table, iid, aspect)
        if partition.fully_unseen:
            labels = decide_fully_unseen(probs, config, aspect.task_kind, none_name)
        elif aspect.task_kind == SINGLE_LABEL:
            labels = (decide_single(probs, partition, config),)
        else:
            assert none_name is not None
            labels = decide_multi(probs, partition, config, none_name)
        predictions.append(Prediction(instance_id=iid, labels=labels))
    return predictions


def write_predictions(path: str | Path, predictions: Iterable[Prediction]) -> int:
    return write_jsonl(
        path, ({"id": p.instance_id, "labels": list(p.labels)} for p in predictions)
    )


def read_predictions(path: str | Path) -> list[Prediction]:
    preds = []
    for lineno, row in read_jsonl(path):
        try:
            preds.append(Prediction(instance_id=row["id"], labels=tuple(row["labels"])))
        except KeyError as exc:
            raise DataError(f"{path}: line {lineno}: missing field {exc}") from exc
    return preds
