"""Accuracy and label-wise weighted F1, with seen/unseen breakdowns.

Weighted F1 treats each label as a binary classification over instances:
per label, precision/recall/F1 come from (TP, FP, FN) counts, and the
overall value is the support-weighted mean of per-label F1, where support
is the number of gold occurrences of the label (multi-label instances
contribute one support unit per gold label). A label with zero support
gets weight zero and, by convention, F1 = 0 when precision and recall are
both zero.

Breakdowns: under accuracy, instances are grouped by whether their gold
label is seen; under weighted F1, the weighting is restricted to each
side's labels and renormalized within the side. A side with nothing to
measure yields None (serialized as null), never 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import DataError
from .jsonio import write_json
from .types import Instance, SeenUnseenPartition, canonical

ACCURACY = "accuracy"
WEIGHTED_F1 = "weighted_f1"
METRIC_KINDS = (ACCURACY, WEIGHTED_F1)

GoldMap = Mapping[str, frozenset[str]]
PredMap = Mapping[str, frozenset[str]]


@dataclass(frozen=True)
class LabelScores:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvalReport:
    metric_kind: str
    overall: float
    per_label: dict[str, LabelScores]
    seen_value: float | None = None
    unseen_value: float | None = None
    n_instances: int = 0

    def to_dict(self) -> dict:
        return {
            "metric": self.metric_kind,
            "overall": self.overall,
            "seen": self.seen_value,
            "unseen": self.unseen_value,
            "n_instances": self.n_instances,
            "per_label": {
                name: {
                    "precision": s.precision,
                    "recall": s.recall,
                    "f1": s.f1,
                    "support": s.support,
                }
                for name, s in self.per_label.items()
            },
        }

    def to_text(self) -> str:
        lines = [f"metric: {self.metric_kind}"]
        lines.append(f"overall: {self.overall:.4f}")
        if self.seen_value is not None or self.unseen_value is not None:
            seen = "-" if self.seen_value is None else f"{self.seen_value:.4f}"
            unseen = "-" if self.unseen_value is None else f"{self.unseen_value:.4f}"
            lines.append(f"seen: {seen}   unseen: {unseen}")
        lines.append(f"instances: {self.n_instances}")
        if self.per_label:
            width = max(len(name) for name in self.per_label)
            lines.append("")
            lines.append(
                f"{'label'.ljust(width)}  {'prec':>7}  {'recall':>7}  {'f1':>7}  {'support':>7}"
            )
            for name, s in self.per_label.items():
                lines.append(
                    f"{name.ljust(width)}  {s.precision:7.4f}  {s.recall:7.4f}  "
                    f"{s.f1:7.4f}  {s.support:7d}"
                )
        return "\n".join(lines) + "\n"

    def save(self, json_path: str | Path, text_path: str | Path | None = None) -> None:
        write_json(json_path, self.to_dict())
        if text_path is not None:
            with open(text_path, "w", encoding="utf-8") as fp:
                fp.write(self.to_text())


def _align(preds: GoldMap, golds: GoldMap) -> None:
    if set(preds) != set(golds):
        missing = sorted(set(golds) - set(preds))[:5]
        extra = sorted(set(preds) - set(golds))[:5]
        raise DataError(
            f"prediction/gold id mismatch (missing={missing} extra={extra})"
        )


def _single(labels: frozenset[str], what: str, iid: str) -> str:
    if len(labels) != 1:
        raise DataError(f"{what} for instance {iid!r} must have exactly one label")
    return next(iter(labels))


def accuracy(preds: PredMap, golds: GoldMap) -> float:
    """Fraction of instances whose single predicted label equals gold."""
    _align(preds, golds)
    if not golds:
        raise DataError("accuracy over zero instances is undefined")
    correct = 0
    for iid, gold in golds.items():
        g = _single(gold, "gold", iid)
        p = _single(preds[iid], "prediction", iid)
        if canonical(g) == canonical(p):
            correct += 1
    return correct / len(golds)


def _confusion(
    preds: PredMap, golds: GoldMap, labels: Sequence[str]
) -> dict[str, tuple[int, int, int]]:
    """Per-label (TP, FP, FN) over instances."""
    keys = {canonical(l): l for l in labels}
    for iid, gold in golds.items():
        for g in gold:
            if canonical(g) not in keys:
                raise DataError(f"gold label {g!r} not covered by the label list")
    counts = {canonical(l): [0, 0, 0] for l in labels}
    for iid, gold in golds.items():
        gold_keys = {canonical(g) for g in gold}
        pred_keys = set()
        for p in preds[iid]:
            key = canonical(p)
            if key not in keys:
                raise DataError(f"prediction references unknown label {p!r}")
            pred_keys.add(key)
        for key in counts:
            in_gold = key in gold_keys
            in_pred = key in pred_keys
            if in_gold and in_pred:
                counts[key][0] += 1
            elif in_pred:
                counts[key][1] += 1
            elif in_gold:
                counts[key][2] += 1
    return {keys[key]: (tp, fp, fn) for key, (tp, fp, fn) in counts.items()}


def _prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def per_label_scores(
    preds: PredMap, golds: GoldMap, labels: Sequence[str]
) -> dict[str, LabelScores]:
    _align(preds, golds)
    out = {}
    for label, (tp, fp, fn) in _confusion(preds, golds, labels).items():
        precision, recall, f1 = _prf(tp, fp, fn)
        out[label] = LabelScores(precision, recall, f1, support=tp + fn)
    return out


def _support_weighted(scores: Mapping[str, LabelScores], labels: Sequence[str]) -> float | None:
    total = sum(scores[l].support for l in labels)
    if total == 0:
        return None
    return sum(scores[l].f1 * scores[l].support for l in labels) / total


def weighted_f1(
    preds: PredMap,
    golds: GoldMap,
    labels: Sequence[str],
    partition: SeenUnseenPartition | None = None,
) -> EvalReport:
    """Label-wise weighted F1 over the given label list."""
    scores = per_label_scores(preds, golds, labels)
    overall = _support_weighted(scores, list(scores))
    if overall is None:
        raise DataError("weighted F1 needs at least one gold label occurrence")
    seen_value = unseen_value = None
    if partition is not None:
        seen_labels = [l for l in scores if partition.is_seen(l)]
        unseen_labels = [l for l in scores if not partition.is_seen(l)]
        seen_value = _support_weighted(scores, seen_labels)
        unseen_value = _support_weighted(scores, unseen_labels)
    return EvalReport(
        metric_kind=WEIGHTED_F1,
        overall=overall,
        per_label=scores,
        seen_value=seen_value,
        unseen_value=unseen_value,
        n_instances=len(golds),
    )


def accuracy_report(
    preds: PredMap,
    golds: GoldMap,
    labels: Sequence[str],
    partition: SeenUnseenPartition | None = None,
) -> EvalReport:
    """Accuracy with an optional seen/unseen instance-subset breakdown."""
    overall = accuracy(preds, golds)
    scores = per_label_scores(preds, golds, labels)
    seen_value = unseen_value = None
    if partition is not None:
        seen_ids = [
            iid for iid, gold in golds.items()
            if partition.is_seen(_single(gold, "gold", iid))
        ]
        unseen_ids = [iid for iid in golds if iid not in set(seen_ids)]
        if seen_ids:
            seen_value = accuracy(
                {i: preds[i] for i in seen_ids}, {i: golds[i] for i in seen_ids}
            )
        if unseen_ids:
            unseen_value = accuracy(
                {i: preds[i] for i in unseen_ids}, {i: golds[i] for i in unseen_ids}
            )
    return EvalReport(
        metric_kind=ACCURACY,
        overall=overall,
        per_label=scores,
        seen_value=seen_value,
        unseen_value=unseen_value,
        n_instances=len(golds),
    )


def seen_unseen_breakdown(
    preds: PredMap,
    golds: GoldMap,
    labels: Sequence[str],
    partition: SeenUnseenPartition,
    metric_kind: str,
) -> tuple[float | None, float | None]:
    """(seen value, unseen value) for the requested metric; a side with no
    instances (accuracy) or no gold support (weighted F1) is None."""
    if metric_kind == ACCURACY:
        report = accuracy_report(preds, golds, labels, partition)
    elif metric_kind == WEIGHTED_F1:
        report = weighted_f1(preds, golds, labels, partition)
    else:
        raise DataError(f"metric must be one of {METRIC_KINDS}, got {metric_kind!r}")
    return report.seen_value, report.unseen_value


def maps_from_instances(instances: Sequence[Instance]) -> GoldMap:
    out: dict[str, frozenset[str]] = {}
    for inst in instances:
        if inst.id in out:
            raise DataError(f"duplicate instance id {inst.id!r}")
        out[inst.id] = frozenset(inst.gold)
    return out


def maps_from_predictions(predictions: Sequence) -> PredMap:
    out: dict[str, frozenset[str]] = {}
    for pred in predictions:
        if pred.instance_id in out:
            raise DataError(f"duplicate prediction id {pred.instance_id!r}")
        out[pred.instance_id] = frozenset(pred.labels)
    return out
