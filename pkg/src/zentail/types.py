"""Core domain types.

Everything here is immutable after construction and safe to share across
threads. Label names are matched case-insensitively after trimming
(`canonical`), because raw corpora vary in casing; the original spelling
is preserved for rendering.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import DataError
from .jsonio import read_json, read_jsonl, write_json, write_jsonl

PLACEHOLDER = "{label}"

SINGLE_LABEL = "single_label"
MULTI_LABEL = "multi_label"
TASK_KINDS = (SINGLE_LABEL, MULTI_LABEL)

WORD = "word"
DEFINITION = "definition"
COMBINATION = "combination"
SCORE_MODES = (WORD, DEFINITION)
GENERATION_MODES = (WORD, DEFINITION, COMBINATION)


def canonical(name: str) -> str:
    """Canonical form used for label-name comparison."""
    return name.strip().lower()


@dataclass(frozen=True)
class Label:
    """A label candidate: a name and an optional dictionary gloss."""

    name: str
    gloss: str | None = None

    def __post_init__(self) -> None:
        if not self.name.strip():
            raise DataError("label name must be nonempty")
        if self.gloss is not None and not self.gloss.strip():
            raise DataError(f"label {self.name!r}: gloss, when present, must be nonempty")


@dataclass(frozen=True)
class AspectSpec:
    """How one aspect (topic, emotion, situation, ...) interprets its labels.

    `interpretation` is a template containing exactly one `{label}`
    placeholder; `labels` is the ordered candidate set. `none_label`, when
    present, is the fallback class and is kept outside `labels`.
    """

    name: str
    interpretation: str
    labels: tuple[Label, ...]
    task_kind: str
    none_label: Label | None = None

    def __post_init__(self) -> None:
        validate_aspect(self)

    @property
    def label_names(self) -> tuple[str, ...]:
        return tuple(lab.name for lab in self.labels)

    @property
    def all_label_names(self) -> tuple[str, ...]:
        """Label names plus the none-label (last), when defined."""
        names = self.label_names
        if self.none_label is not None:
            names = names + (self.none_label.name,)
        return names

    def find_label(self, name: str) -> Label:
        """Resolve `name` case-insensitively among labels and the none-label."""
        key = canonical(name)
        for lab in self.labels:
            if canonical(lab.name) == key:
                return lab
        if self.none_label is not None and canonical(self.none_label.name) == key:
            return self.none_label
        raise DataError(f"aspect {self.name!r}: unknown label {name!r}")

    def has_label(self, name: str) -> bool:
        try:
            self.find_label(name)
        except DataError:
            return False
        return True


def validate_aspect(spec: AspectSpec) -> AspectSpec:
    """Check AspectSpec invariants; returns the spec unchanged when valid."""
    if not spec.name.strip():
        raise DataError("aspect name must be nonempty")
    n_placeholders = spec.interpretation.count(PLACEHOLDER)
    if n_placeholders != 1:
        raise DataError(
            f"aspect {spec.name!r}: interpretation must contain exactly one "
            f"{PLACEHOLDER!r} placeholder, found {n_placeholders}"
        )
    if spec.task_kind not in TASK_KINDS:
        raise DataError(f"aspect {spec.name!r}: task_kind must be one of {TASK_KINDS}")
    seen_keys: set[str] = set()
    for lab in spec.labels:
        key = canonical(lab.name)
        if key in seen_keys:
            raise DataError(f"aspect {spec.name!r}: duplicate label {lab.name!r}")
        seen_keys.add(key)
    if spec.none_label is not None and canonical(spec.none_label.name) in seen_keys:
        raise DataError(
            f"aspect {spec.name!r}: none_label {spec.none_label.name!r} collides with labels"
        )
    return spec


@dataclass(frozen=True, slots=True)
class Instance:
    """One text with its gold label names and an optional domain tag."""

    id: str
    text: str
    gold: tuple[str, ...]
    domain: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise DataError("instance id must be nonempty")
        if not self.gold:
            raise DataError(f"instance {self.id!r}: gold labels must be nonempty")

    def has_gold(self, name: str) -> bool:
        key = canonical(name)
        return any(canonical(g) == key for g in self.gold)


@dataclass(frozen=True)
class SeenUnseenPartition:
    """Division of an aspect's labels into seen (trained-on) and unseen."""

    seen: frozenset[str]
    unseen: frozenset[str]

    def __post_init__(self) -> None:
        overlap = {canonical(s) for s in self.seen} & {canonical(u) for u in self.unseen}
        if overlap:
            raise DataError(f"partition: labels on both sides: {sorted(overlap)}")

    @property
    def fully_unseen(self) -> bool:
        return not self.seen

    def is_seen(self, name: str) -> bool:
        key = canonical(name)
        return any(canonical(s) == key for s in self.seen)


def partition_for(aspect: AspectSpec, seen: Iterable[str]) -> SeenUnseenPartition:
    """Build the partition with `seen` on one side and every remaining
    label of the aspect (including the none-label) on the other."""
    seen_names = tuple(aspect.find_label(s).name for s in seen)
    seen_keys = {canonical(s) for s in seen_names}
    unseen = tuple(n for n in aspect.all_label_names if canonical(n) not in seen_keys)
    return SeenUnseenPartition(seen=frozenset(seen_names), unseen=frozenset(unseen))


def validate_partition(partition: SeenUnseenPartition, aspect: AspectSpec) -> None:
    """Partition completeness: seen and unseen together must equal the
    aspect's full label set (none-label included when defined)."""
    have = {canonical(n) for n in partition.seen | partition.unseen}
    want = {canonical(n) for n in aspect.all_label_names}
    if have != want:
        missing = sorted(want - have)
        extra = sorted(have - want)
        raise DataError(
            f"partition does not cover aspect {aspect.name!r}: "
            f"missing={missing} extra={extra}"
        )


class ScoreTable:
    """Entailment probabilities keyed by (instance id, label name, mode).

    Probabilities must lie in [0, 1]; a given (instance, label) needs at
    least one mode before the table is considered complete for decisions.
    """

    def __init__(self) -> None:
        self._rows: dict[str, dict[str, dict[str, float]]] = {}
        self._size = 0

    def set(self, instance_id: str, label: str, mode: str, prob: float) -> None:
        if mode not in SCORE_MODES:
            raise DataError(f"score mode must be one of {SCORE_MODES}, got {mode!r}")
        if not 0.0 <= prob <= 1.0:
            raise DataError(
                f"probability out of range for ({instance_id}, {label}, {mode}): {prob}"
            )
        by_label = self._rows.setdefault(instance_id, {})
        by_mode = by_label.setdefault(canonical(label), {})
        if mode not in by_mode:
            self._size += 1
        by_mode[mode] = float(prob)

    def get(self, instance_id: str, label: str, mode: str) -> float:
        return self._rows[instance_id][canonical(label)][mode]

    def modes_for(self, instance_id: str, label: str) -> dict[str, float]:
        try:
            return dict(self._rows[instance_id][canonical(label)])
        except KeyError:
            return {}

    def instance_ids(self) -> list[str]:
        return list(self._rows)

    def __len__(self) -> int:
        return self._size

    def rows(self) -> Iterator[tuple[str, str, str, float]]:
        for iid, by_label in self._rows.items():
            for lab, by_mode in by_label.items():
                for mode, p in by_mode.items():
                    yield iid, lab, mode, p

    def to_file(self, path: str | Path) -> None:
        write_jsonl(
            path,
            (
                {"instance_id": iid, "label": lab, "mode": mode, "entail": p}
                for iid, lab, mode, p in self.rows()
            ),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "ScoreTable":
        table = cls()
        for lineno, row in read_jsonl(path):
            try:
                table.set(row["instance_id"], row["label"], row["mode"], row["entail"])
            except KeyError as exc:
                raise DataError(f"{path}: line {lineno}: missing field {exc}") from exc
        return table


# ---------------------------------------------------------------------------
# Flat-file formats
# ---------------------------------------------------------------------------

def instance_to_dict(inst: Instance) -> dict:
    row: dict = {"id": inst.id, "text": inst.text, "labels": list(inst.gold)}
    if inst.domain is not None:
        row["domain"] = inst.domain
    return row


def instance_from_dict(row: Mapping, where: str = "") -> Instance:
    for field_name in ("id", "text", "labels"):
        if field_name not in row:
            raise DataError(f"{where}missing field {field_name!r}")
    labels = row["labels"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise DataError(f"{where}field 'labels' must be an array of strings")
    return Instance(
        id=str(row["id"]),
        text=str(row["text"]),
        gold=tuple(labels),
        domain=row.get("domain"),
    )


def read_instances(path: str | Path) -> list[Instance]:
    return [
        instance_from_dict(row, where=f"{path}: line {lineno}: ")
        for lineno, row in read_jsonl(path)
    ]


def write_instances(path: str | Path, instances: Iterable[Instance]) -> int:
    return write_jsonl(path, (instance_to_dict(inst) for inst in instances))


def aspect_to_dict(aspect: AspectSpec) -> dict:
    return {
        "name": aspect.name,
        "interpretation": aspect.interpretation,
        "task_kind": aspect.task_kind,
        "labels": [
            {"name": lab.name} if lab.gloss is None else {"name": lab.name, "gloss": lab.gloss}
            for lab in aspect.labels
        ],
        "none_label": aspect.none_label.name if aspect.none_label else None,
    }


def aspect_from_dict(doc: Mapping, where: str = "") -> AspectSpec:
    for field_name in ("name", "interpretation", "task_kind", "labels"):
        if field_name not in doc:
            raise DataError(f"{where}aspect document missing field {field_name!r}")
    labels = []
    for entry in doc["labels"]:
        if isinstance(entry, str):
            labels.append(Label(name=entry))
        elif isinstance(entry, Mapping):
            labels.append(Label(name=entry["name"], gloss=entry.get("gloss")))
        else:
            raise DataError(f"{where}labels entries must be strings or objects")
    none_name = doc.get("none_label")
    return AspectSpec(
        name=doc["name"],
        interpretation=doc["interpretation"],
        labels=tuple(labels),
        task_kind=doc["task_kind"],
        none_label=Label(name=none_name) if none_name else None,
    )


def read_aspect(path: str | Path) -> AspectSpec:
    return aspect_from_dict(read_json(path), where=f"{path}: ")


def write_aspect(path: str | Path, aspect: AspectSpec) -> None:
    write_json(path, aspect_to_dict(aspect))


def read_partition(path: str | Path) -> SeenUnseenPartition:
    doc = read_json(path)
    if "seen" not in doc or "unseen" not in doc:
        raise DataError(f"{path}: partition file needs 'seen' and 'unseen' arrays")
    return SeenUnseenPartition(
        seen=frozenset(doc["seen"]), unseen=frozenset(doc["unseen"])
    )


def write_partition(path: str | Path, partition: SeenUnseenPartition) -> None:
    write_json(
        path,
        {"seen": sorted(partition.seen), "unseen": sorted(partition.unseen)},
    )
